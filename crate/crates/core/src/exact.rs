//! Exact rational linear algebra.
//!
//! Every computation in the crate runs over `Q`. Matrices are dense and
//! row-major; elimination skips zero entries, which keeps the sparse systems
//! produced by cochain constraints cheap.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;

/// Canonical rational number (reduced, positive denominator).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`. Zero denominators and stray whitespace are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let int = |t: &str| -> Result<BigInt, Error> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            if q.starts_with('-') {
                return Err(bad());
            }
            let q = int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

/// Inverse of [`parse_rational`]: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Nonzero entries of `v` as `(index, value)` pairs.
pub fn support(v: &[Rational]) -> Vec<(usize, &Rational)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zero_vec(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rational>]) -> Result<Self, Error> {
        let mut m = Matrix::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {nrows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        let mut out = zero_vec(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self).expect("square");
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
///
/// The first nonzero entry at or below the current row is taken as pivot, so
/// the result is the unique RREF of the row space.
pub fn rref(m: &Matrix) -> Rref {
    let (nr, nc) = (m.rows, m.cols);
    let mut rows: Vec<Vec<Rational>> = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (c..nc).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: Matrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() },
        rank,
        pivots,
    }
}

/// Canonical nullspace basis: one vector per free column, in increasing
/// column order, with that coordinate 1 and every other free coordinate 0.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    nullspace_from_rref(&r, m.cols)
}

fn nullspace_from_rref(r: &Rref, ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(ncols);
        v[free] = Rational::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            let x = r.reduced.get(i, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// Particular solution of `m x = b` with every free variable set to zero.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, Error> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(m.cols);
    for (i, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// Coordinates of `v` in the span of `vectors`, or `None` if outside it.
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    if vectors.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), vectors).ok()?;
    solve(&m, v).ok().flatten()
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).expect("equal lengths").rank()
}

/// Indices of a maximal linearly independent prefix-greedy subset.
pub fn independent_columns(vectors: &[Vec<Rational>], len: usize) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_columns(len, vectors).expect("equal lengths");
    rref(&m).pivots
}

/// Rescales a basis of a subspace into the canonical form produced by
/// [`nullspace_basis`] for any system with that solution set: each vector's
/// last nonzero coordinate is 1 and vanishes in every other vector.
pub fn canonical_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let reversed: Vec<Vec<Rational>> =
        vectors.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let r = rref(&Matrix::from_rows(reversed).expect("equal lengths"));
    let mut out: Vec<Vec<Rational>> = (0..r.rank)
        .map(|i| r.reduced.row(i).iter().rev().cloned().collect::<Vec<_>>())
        .collect();
    // pivots ascend in reversed order, so free columns descend; flip to ascend
    out.reverse();
    debug_assert!(out.iter().all(|v| v.len() == len));
    out
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3", "12345678901234567890/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("-4/-6").unwrap_or_else(|_| rat(0))), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["1/0", "", "/2", "1/", " 1", "1 ", "+1", "1.5", "a", "1/-2", "--1"] {
            assert!(parse_rational(s).is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn rref_of_small_system() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced.row(0), &[rat(1), rat(0), rat(1)][..]);
        assert_eq!(r.reduced.row(1), &[rat(0), rat(1), rat(1)][..]);
    }

    #[test]
    fn nullspace_is_canonical() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace_basis(&m);
        assert_eq!(ns, vec![vec![rat(-2), rat(1), rat(0)], vec![rat(-3), rat(0), rat(1)]]);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn canonical_basis_matches_nullspace() {
        let m = Matrix::from_i64(&[&[1, 1, 0, 2], &[0, 0, 1, -1]]);
        let ns = nullspace_basis(&m);
        let mixed = vec![
            ns[0].iter().zip(&ns[1]).map(|(a, b)| a * rat(3) - b).collect::<Vec<_>>(),
            ns[1].iter().map(|x| x * frac(1, 2)).collect(),
        ];
        assert_eq!(canonical_basis(&mixed, 4), ns);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = Matrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        let x = solve(&m, &[rat(3), rat(1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(2), rat(1), rat(0)]);
        let inconsistent = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&inconsistent, &[rat(1), rat(2)]).unwrap(), None);
        assert!(solve(&m, &[rat(1)]).is_err());
    }

    #[test]
    fn in_span_and_inverse() {
        let vs = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        assert_eq!(in_span(&vs, &[rat(2), rat(3), rat(5)]), Some(vec![rat(2), rat(3)]));
        assert_eq!(in_span(&vs, &[rat(0), rat(0), rat(1)]), None);
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}

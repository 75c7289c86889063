//! Multilinear maps stored as dense coefficient tensors.
//!
//! A map of arity `k` from an `n`-dimensional space to an `m`-dimensional one
//! stores its value on every basis tuple `(e_{i1}, ..., e_{ik})`. Tuples are
//! ordered row-major lexicographically with the target coordinate innermost,
//! so the value on a tuple is the contiguous slice
//! `coeffs[idx * m .. (idx + 1) * m]` where `idx = ((i1 * n + i2) * n + ...)`.

use num::{One, Zero};

use crate::error::Error;
use crate::exact::{axpy, is_zero_vec, support, zero_vec, Matrix, Rational};

/// Lexicographic iterator over `{0..n}^k`.
pub struct Tuples {
    n: usize,
    next: Option<Vec<usize>>,
}

pub fn tuples(k: usize, n: usize) -> Tuples {
    let next = if n == 0 && k > 0 { None } else { Some(vec![0; k]) };
    Tuples { n, next }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.n {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    }
}

/// Sign of the permutation `p` of `0..p.len()`.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    arity: usize,
    source_dim: usize,
    target_dim: usize,
    coeffs: Vec<Rational>,
}

impl MultilinearMap {
    pub fn zero(arity: usize, source_dim: usize, target_dim: usize) -> Self {
        let len = source_dim.pow(arity as u32) * target_dim;
        MultilinearMap { arity, source_dim, target_dim, coeffs: zero_vec(len) }
    }

    pub fn from_coeffs(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        coeffs: Vec<Rational>,
    ) -> Result<Self, Error> {
        let len = source_dim.pow(arity as u32) * target_dim;
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "expected {len} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(MultilinearMap { arity, source_dim, target_dim, coeffs })
    }

    /// Builds a map from its values on basis tuples.
    pub fn from_fn(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut out = MultilinearMap::zero(arity, source_dim, target_dim);
        for (idx, t) in tuples(arity, source_dim).enumerate() {
            let v = f(&t);
            assert_eq!(v.len(), target_dim, "value has wrong length");
            out.coeffs[idx * target_dim..(idx + 1) * target_dim].clone_from_slice(&v);
        }
        out
    }

    /// The linear map with matrix `m` (column j = image of e_j) as an arity-1 map.
    pub fn from_matrix(m: &Matrix) -> Self {
        MultilinearMap::from_fn(1, m.ncols(), m.nrows(), |t| m.column(t[0]))
    }

    /// Inverse of [`MultilinearMap::from_matrix`] for arity 1.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.arity, 1);
        let cols: Vec<Vec<Rational>> =
            (0..self.source_dim).map(|j| self.value(&[j]).to_vec()).collect();
        Matrix::from_columns(self.target_dim, &cols).expect("consistent")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn tuple_index(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.arity);
        t.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.source_dim);
            acc * self.source_dim + i
        })
    }

    /// Value on the basis tuple `t`.
    pub fn value(&self, t: &[usize]) -> &[Rational] {
        let i = self.tuple_index(t) * self.target_dim;
        &self.coeffs[i..i + self.target_dim]
    }

    pub fn value_mut(&mut self, t: &[usize]) -> &mut [Rational] {
        let i = self.tuple_index(t) * self.target_dim;
        &mut self.coeffs[i..i + self.target_dim]
    }

    pub fn set(&mut self, t: &[usize], v: &[Rational]) {
        self.value_mut(t).clone_from_slice(v);
    }

    /// Evaluates on arbitrary vectors by multilinear expansion over their supports.
    pub fn eval(&self, args: &[&[Rational]]) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = zero_vec(self.target_dim);
        let supports: Vec<Vec<(usize, &Rational)>> = args.iter().map(|a| support(a)).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pos = vec![0usize; self.arity];
        let mut t = vec![0usize; self.arity];
        loop {
            let mut c = Rational::one();
            for (j, s) in supports.iter().enumerate() {
                let (i, x) = s[pos[j]];
                t[j] = i;
                c *= x;
            }
            axpy(&mut out, &c, self.value(&t));
            // odometer over support positions
            let mut j = self.arity;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                pos[j] += 1;
                if pos[j] < supports[j].len() {
                    break;
                }
                pos[j] = 0;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    fn check_shape(&self, other: &MultilinearMap) {
        assert_eq!(
            (self.arity, self.source_dim, self.target_dim),
            (other.arity, other.source_dim, other.target_dim),
            "shape mismatch"
        );
    }

    pub fn add(&self, other: &MultilinearMap) -> MultilinearMap {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &MultilinearMap) -> MultilinearMap {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> MultilinearMap {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            if !x.is_zero() {
                *x *= c;
            }
        }
        out
    }

    pub fn neg(&self) -> MultilinearMap {
        self.scale(&-Rational::one())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &MultilinearMap) {
        self.check_shape(other);
        axpy(&mut self.coeffs, c, &other.coeffs);
    }

    /// Linear combination `sum c_i f_i` of maps of the given shape.
    pub fn combination(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        coords: &[Rational],
        maps: &[MultilinearMap],
    ) -> MultilinearMap {
        let mut out = MultilinearMap::zero(arity, source_dim, target_dim);
        for (c, f) in coords.iter().zip(maps) {
            out.add_scaled(c, f);
        }
        out
    }

    /// `g ∘ f` for a linear map `g` on the target.
    pub fn compose_output(&self, g: &Matrix) -> MultilinearMap {
        assert_eq!(g.ncols(), self.target_dim);
        let mut out = MultilinearMap::zero(self.arity, self.source_dim, g.nrows());
        let m = g.nrows();
        for idx in 0..self.coeffs.len() / self.target_dim.max(1) {
            let v = &self.coeffs[idx * self.target_dim..(idx + 1) * self.target_dim];
            if is_zero_vec(v) {
                continue;
            }
            out.coeffs[idx * m..(idx + 1) * m].clone_from_slice(&g.mul_vec(v));
        }
        out
    }

    /// `f ∘ g^{⊗k}` for a linear map `g` into the source.
    pub fn compose_inputs(&self, g: &Matrix) -> MultilinearMap {
        assert_eq!(g.nrows(), self.source_dim);
        let cols: Vec<Vec<Rational>> = (0..g.ncols()).map(|j| g.column(j)).collect();
        MultilinearMap::from_fn(self.arity, g.ncols(), self.target_dim, |t| {
            let args: Vec<&[Rational]> = t.iter().map(|&i| cols[i].as_slice()).collect();
            self.eval(&args)
        })
    }

    /// Permutes arguments: `out(x_0, ..., x_{k-1}) = self(x_{p(0)}, ..., x_{p(k-1)})`.
    pub fn permute_args(&self, p: &[usize]) -> MultilinearMap {
        assert_eq!(p.len(), self.arity);
        let mut s = vec![0; self.arity];
        MultilinearMap::from_fn(self.arity, self.source_dim, self.target_dim, |t| {
            for (j, &pj) in p.iter().enumerate() {
                s[j] = t[pj];
            }
            self.value(&s).to_vec()
        })
    }

    /// Vanishes on repeated adjacent arguments and flips sign under adjacent swaps.
    pub fn is_alternating(&self) -> bool {
        if self.arity < 2 {
            return true;
        }
        let mut s = vec![0; self.arity];
        for t in tuples(self.arity, self.source_dim) {
            for j in 0..self.arity - 1 {
                if t[j] == t[j + 1] {
                    if !is_zero_vec(self.value(&t)) {
                        return false;
                    }
                } else if t[j] < t[j + 1] {
                    s.clone_from(&t);
                    s.swap(j, j + 1);
                    let (a, b) = (self.value(&t), self.value(&s));
                    if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// First basis tuple (in index order) with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<Rational>)> {
        tuples(self.arity, self.source_dim).find_map(|t| {
            let v = self.value(&t);
            (!is_zero_vec(v)).then(|| (t.clone(), v.to_vec()))
        })
    }

    /// Tests `beta ∘ f = f ∘ alpha^{⊗k}`.
    pub fn is_compatible(&self, alpha: &Matrix, beta: &Matrix) -> bool {
        self.compose_output(beta) == self.compose_inputs(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<Vec<usize>> = tuples(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(tuples(0, 3).count(), 1);
        assert_eq!(tuples(2, 0).count(), 0);
    }

    #[test]
    fn index_order_matches_layout() {
        let f = MultilinearMap::from_fn(2, 2, 2, |t| vec![rat(t[0] as i64), rat(t[1] as i64)]);
        let c: Vec<i64> = f.coeffs().iter().map(|x| x.to_integer().try_into().unwrap()).collect();
        assert_eq!(c, vec![0, 0, 0, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let total: i64 = perms.iter().map(|p| permutation_sign(p)).sum();
        assert_eq!(total, 0);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(factorial(4), rat(24));
    }

    #[test]
    fn eval_is_multilinear() {
        let f = MultilinearMap::from_fn(2, 2, 1, |t| vec![rat((t[0] * 2 + t[1] + 1) as i64)]);
        // f(e0+e1, 2e1) = 2 f(e0,e1) + 2 f(e1,e1) = 2*2 + 2*4
        let v = f.eval(&[&[rat(1), rat(1)], &[rat(0), rat(2)]]);
        assert_eq!(v, vec![rat(12)]);
        assert_eq!(f.eval(&[&[rat(0), rat(0)], &[rat(1), rat(2)]]), vec![rat(0)]);
    }

    #[test]
    fn compose_and_compatibility() {
        let alpha = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let f = MultilinearMap::from_fn(1, 2, 2, |t| if t[0] == 0 { vec![rat(1), rat(0)] } else { vec![rat(0), rat(0)] });
        assert!(f.is_compatible(&alpha, &alpha));
        let g = MultilinearMap::from_fn(1, 2, 2, |t| if t[0] == 0 { vec![rat(0), rat(1)] } else { vec![rat(0), rat(0)] });
        assert!(!g.is_compatible(&alpha, &alpha));
        assert_eq!(MultilinearMap::from_matrix(&alpha).to_matrix(), alpha);
    }

    #[test]
    fn alternation_detection() {
        let skew = MultilinearMap::from_fn(2, 2, 1, |t| match (t[0], t[1]) {
            (0, 1) => vec![rat(1)],
            (1, 0) => vec![rat(-1)],
            _ => vec![rat(0)],
        });
        assert!(skew.is_alternating());
        let sym = MultilinearMap::from_fn(2, 2, 1, |t| vec![rat((t[0] != t[1]) as i64)]);
        assert!(!sym.is_alternating());
    }
}

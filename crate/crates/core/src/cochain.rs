//! Cochain spaces: compatible (and for the Lie flavor, alternating)
//! multilinear maps, with canonical bases.
//!
//! The canonical basis of a space is the RREF nullspace basis of its
//! constraint system in tensor coordinates: one basis element per free
//! coordinate, equal to 1 there and 0 at every other free coordinate. Since
//! that basis depends only on the solution space, the Lie flavor solves a
//! smaller system over strictly increasing tuples and then canonicalizes.

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::HomAlgebra;
use crate::error::Error;
use crate::exact::{canonical_basis, nullspace_basis, rat, unit_vec, Matrix, Rational};
use crate::multilinear::{factorial, permutation_sign, permutations, tuples, MultilinearMap};
use crate::rep::HomMorphism;

pub const DEFAULT_MAX_ARITY: usize = 4;

/// Arity limit for cochain spaces, overridable through `HOMCOH_MAX_ARITY`.
pub fn max_arity() -> usize {
    std::env::var("HOMCOH_MAX_ARITY")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ARITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Hom,
    Lie,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub arity: usize,
    pub flavor: Flavor,
    pub source_dim: usize,
    pub target_dim: usize,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub basis: Vec<MultilinearMap>,
    /// Coordinate (in tensor layout) at which each basis element is 1 and
    /// every other basis element is 0.
    free: Vec<usize>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.source_dim.pow(self.arity as u32) * self.target_dim
    }

    pub fn zero(&self) -> MultilinearMap {
        MultilinearMap::zero(self.arity, self.source_dim, self.target_dim)
    }

    /// Coordinates of `f` in the canonical basis, `None` if `f` is not in the space.
    pub fn coordinates(&self, f: &MultilinearMap) -> Option<Vec<Rational>> {
        if (f.arity(), f.source_dim(), f.target_dim())
            != (self.arity, self.source_dim, self.target_dim)
        {
            return None;
        }
        let coords: Vec<Rational> = self.free.iter().map(|&i| f.coeffs()[i].clone()).collect();
        (self.element(&coords) == *f).then_some(coords)
    }

    pub fn contains(&self, f: &MultilinearMap) -> bool {
        self.coordinates(f).is_some()
    }

    pub fn element(&self, coords: &[Rational]) -> MultilinearMap {
        MultilinearMap::combination(self.arity, self.source_dim, self.target_dim, coords, &self.basis)
    }
}

fn check_arity(arity: usize) -> Result<(), Error> {
    let limit = max_arity();
    if arity > limit {
        return Err(Error::ArityLimit { arity, limit });
    }
    Ok(())
}

/// Terms of `f(α e_{t_1}, ..., α e_{t_k})` as `(source tuple, coefficient)`.
fn twisted_terms(alpha: &Matrix, t: &[usize]) -> Vec<(Vec<usize>, Rational)> {
    let mut out = vec![(Vec::with_capacity(t.len()), Rational::one())];
    for &tj in t {
        let col = alpha.column(tj);
        let mut next = Vec::new();
        for (s, c) in &out {
            for (i, a) in col.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut s2 = s.clone();
                s2.push(i);
                next.push((s2, c * a));
            }
        }
        out = next;
    }
    out
}

fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * n + i)
}

/// The full linear system whose nullspace is the cochain space, in tensor
/// coordinates: compatibility rows `β f(t) − f(α t)` for every basis tuple
/// and output coordinate, followed (for the Lie flavor) by adjacent
/// alternation rows.
pub fn constraint_matrix(
    alpha: &Matrix,
    target_dim: usize,
    beta: &Matrix,
    arity: usize,
    flavor: Flavor,
) -> Matrix {
    let n = alpha.nrows();
    let m = target_dim;
    let cols = n.pow(arity as u32) * m;
    let mut rows = Vec::new();
    for t in tuples(arity, n) {
        let ti = tuple_index(&t, n);
        let terms = twisted_terms(alpha, &t);
        for o in 0..m {
            let mut row = vec![Rational::zero(); cols];
            for o2 in 0..m {
                row[ti * m + o2] += beta.get(o, o2);
            }
            for (s, c) in &terms {
                row[tuple_index(s, n) * m + o] -= c;
            }
            rows.push(row);
        }
    }
    if flavor == Flavor::Lie {
        for t in tuples(arity, n) {
            let ti = tuple_index(&t, n);
            for j in 0..arity.saturating_sub(1) {
                if t[j] > t[j + 1] {
                    continue;
                }
                let mut s = t.clone();
                s.swap(j, j + 1);
                let si = tuple_index(&s, n);
                for o in 0..m {
                    let mut row = vec![Rational::zero(); cols];
                    row[ti * m + o] += Rational::one();
                    if si != ti {
                        row[si * m + o] += Rational::one();
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(rows).expect("rectangular")
}

/// Canonical basis of `{f : β∘f = f∘α^{⊗k}}`, alternating for the Lie flavor.
/// Arity 0 gives the whole target space with no constraint.
pub fn cochain_space(
    alpha: &Matrix,
    target_dim: usize,
    beta: &Matrix,
    arity: usize,
    flavor: Flavor,
) -> Result<CochainSpace, Error> {
    check_arity(arity)?;
    let n = alpha.nrows();
    if !alpha.is_square() || beta.nrows() != target_dim || !beta.is_square() {
        return Err(Error::DimensionMismatch("twist matrices have the wrong shape".into()));
    }
    let m = target_dim;
    let vectors: Vec<Vec<Rational>> = if arity == 0 {
        (0..m).map(|i| unit_vec(m, i)).collect()
    } else if flavor == Flavor::Hom || arity == 1 {
        nullspace_basis(&constraint_matrix(alpha, m, beta, arity, Flavor::Hom))
    } else {
        canonical_basis(&alternating_solutions(alpha, m, beta, arity), n.pow(arity as u32) * m)
    };
    let free = vectors
        .iter()
        .map(|v| v.iter().rposition(|x| !x.is_zero()).expect("nonzero basis vector"))
        .collect();
    let basis = vectors
        .into_iter()
        .map(|v| MultilinearMap::from_coeffs(arity, n, m, v).expect("length"))
        .collect();
    Ok(CochainSpace {
        arity,
        flavor,
        source_dim: n,
        target_dim: m,
        alpha: alpha.clone(),
        beta: beta.clone(),
        basis,
        free,
    })
}

/// Solves the compatibility system on alternating maps, parametrized by
/// their values on strictly increasing tuples; returns full tensors.
fn alternating_solutions(
    alpha: &Matrix,
    m: usize,
    beta: &Matrix,
    arity: usize,
) -> Vec<Vec<Rational>> {
    let n = alpha.nrows();
    let increasing: Vec<Vec<usize>> =
        tuples(arity, n).filter(|t| t.windows(2).all(|w| w[0] < w[1])).collect();
    if increasing.is_empty() {
        return Vec::new();
    }
    let position = |t: &[usize]| increasing.binary_search_by(|u| u.as_slice().cmp(t)).ok();
    // sorts `s`, returning the permutation sign, or None on a repeat
    let normalize = |s: &[usize]| -> Option<(usize, i64)> {
        let mut idx: Vec<usize> = (0..s.len()).collect();
        idx.sort_by_key(|&i| s[i]);
        let sorted: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((position(&sorted).expect("increasing"), permutation_sign(&idx)))
    };
    let cols = increasing.len() * m;
    let mut rows = Vec::new();
    for (ui, u) in increasing.iter().enumerate() {
        let terms = twisted_terms(alpha, u);
        for o in 0..m {
            let mut row = vec![Rational::zero(); cols];
            for o2 in 0..m {
                row[ui * m + o2] += beta.get(o, o2);
            }
            for (s, c) in &terms {
                if let Some((si, sign)) = normalize(s) {
                    row[si * m + o] -= c * rat(sign);
                }
            }
            rows.push(row);
        }
    }
    let reduced = nullspace_basis(&Matrix::from_rows(rows).expect("rectangular"));
    let mut perm_cache = Vec::new();
    for p in permutations(arity) {
        let sign = permutation_sign(&p);
        perm_cache.push((p, sign));
    }
    reduced
        .iter()
        .map(|g| {
            let mut full = vec![Rational::zero(); n.pow(arity as u32) * m];
            for (ui, u) in increasing.iter().enumerate() {
                let val = &g[ui * m..(ui + 1) * m];
                if val.iter().all(Zero::is_zero) {
                    continue;
                }
                for (p, sign) in &perm_cache {
                    let s: Vec<usize> = p.iter().map(|&i| u[i]).collect();
                    let si = tuple_index(&s, n);
                    for o in 0..m {
                        full[si * m + o] = &val[o] * rat(*sign);
                    }
                }
            }
            full
        })
        .collect()
}

/// `C^k_{α,β}(A, M)` for an associative-kind source.
pub fn hom_cochain_basis(
    source: &HomAlgebra,
    target_dim: usize,
    beta: &Matrix,
    arity: usize,
) -> Result<CochainSpace, Error> {
    cochain_space(&source.alpha, target_dim, beta, arity, Flavor::Hom)
}

/// Alternating `C^k_{α,β}(L, V)`.
pub fn lie_cochain_basis(
    source: &HomAlgebra,
    target_dim: usize,
    beta: &Matrix,
    arity: usize,
) -> Result<CochainSpace, Error> {
    cochain_space(&source.alpha, target_dim, beta, arity, Flavor::Lie)
}

/// `(λφ)(x_0..x_a) = (1/(a+1)!) Σ_σ ε(σ) φ(x_σ(0), ..., x_σ(a))`.
pub fn alternator(phi: &MultilinearMap) -> MultilinearMap {
    let k = phi.arity();
    let mut out = MultilinearMap::zero(k, phi.source_dim(), phi.target_dim());
    for p in permutations(k) {
        out.add_scaled(&rat(permutation_sign(&p)), &phi.permute_args(&p));
    }
    out.scale(&factorial(k).recip())
}

/// A cochain of the morphism complex: `(A → A, B → B, A → B)` components
/// of arities `(n, n, n − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCochain {
    pub comp_a: MultilinearMap,
    pub comp_b: MultilinearMap,
    pub comp_ab: MultilinearMap,
}

impl MorphismCochain {
    pub fn zero(phi: &HomMorphism, degree: usize) -> Self {
        let (na, nb) = (phi.source.dim(), phi.target.dim());
        MorphismCochain {
            comp_a: MultilinearMap::zero(degree, na, na),
            comp_b: MultilinearMap::zero(degree, nb, nb),
            comp_ab: MultilinearMap::zero(degree - 1, na, nb),
        }
    }

    pub fn degree(&self) -> usize {
        self.comp_a.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.comp_a.is_zero() && self.comp_b.is_zero() && self.comp_ab.is_zero()
    }

    /// Concatenated tensor coordinates of the three components.
    pub fn to_ambient(&self) -> Vec<Rational> {
        let mut v = self.comp_a.coeffs().to_vec();
        v.extend_from_slice(self.comp_b.coeffs());
        v.extend_from_slice(self.comp_ab.coeffs());
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        MorphismCochain {
            comp_a: self.comp_a.add(&other.comp_a),
            comp_b: self.comp_b.add(&other.comp_b),
            comp_ab: self.comp_ab.add(&other.comp_ab),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        MorphismCochain {
            comp_a: self.comp_a.sub(&other.comp_a),
            comp_b: self.comp_b.sub(&other.comp_b),
            comp_ab: self.comp_ab.sub(&other.comp_ab),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MorphismCochain {
            comp_a: self.comp_a.scale(c),
            comp_b: self.comp_b.scale(c),
            comp_ab: self.comp_ab.scale(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCochainSpace {
    pub degree: usize,
    pub flavor: Flavor,
    pub space_a: CochainSpace,
    pub space_b: CochainSpace,
    pub space_ab: CochainSpace,
}

impl MorphismCochainSpace {
    pub fn dim(&self) -> usize {
        self.space_a.dim() + self.space_b.dim() + self.space_ab.dim()
    }

    pub fn basis(&self) -> Vec<MorphismCochain> {
        let (za, zb, zab) = (self.space_a.zero(), self.space_b.zero(), self.space_ab.zero());
        let mut out = Vec::with_capacity(self.dim());
        for f in &self.space_a.basis {
            out.push(MorphismCochain { comp_a: f.clone(), comp_b: zb.clone(), comp_ab: zab.clone() });
        }
        for f in &self.space_b.basis {
            out.push(MorphismCochain { comp_a: za.clone(), comp_b: f.clone(), comp_ab: zab.clone() });
        }
        for f in &self.space_ab.basis {
            out.push(MorphismCochain { comp_a: za.clone(), comp_b: zb.clone(), comp_ab: f.clone() });
        }
        out
    }

    pub fn coordinates(&self, c: &MorphismCochain) -> Option<Vec<Rational>> {
        let mut v = self.space_a.coordinates(&c.comp_a)?;
        v.extend(self.space_b.coordinates(&c.comp_b)?);
        v.extend(self.space_ab.coordinates(&c.comp_ab)?);
        Some(v)
    }

    pub fn element(&self, coords: &[Rational]) -> MorphismCochain {
        let (a, rest) = coords.split_at(self.space_a.dim());
        let (b, ab) = rest.split_at(self.space_b.dim());
        MorphismCochain {
            comp_a: self.space_a.element(a),
            comp_b: self.space_b.element(b),
            comp_ab: self.space_ab.element(ab),
        }
    }
}

/// `C^n(A,A) × C^n(B,B) × C^{n−1}_{α,α'}(A,B)`.
pub fn morphism_cochain_space(
    phi: &HomMorphism,
    degree: usize,
    flavor: Flavor,
) -> Result<MorphismCochainSpace, Error> {
    if degree == 0 {
        return Err(Error::Unsupported("morphism cochains start in degree 1".into()));
    }
    let (a, b) = (&phi.source, &phi.target);
    Ok(MorphismCochainSpace {
        degree,
        flavor,
        space_a: cochain_space(&a.alpha, a.dim(), &a.alpha, degree, flavor)?,
        space_b: cochain_space(&b.alpha, b.dim(), &b.alpha, degree, flavor)?,
        space_ab: cochain_space(&a.alpha, b.dim(), &b.alpha, degree - 1, flavor)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::fixtures;

    fn id(n: usize) -> Matrix {
        Matrix::identity(n)
    }

    #[test]
    fn hom_dimensions() {
        let a = fixtures::a3(rat(1), rat(1));
        assert_eq!(hom_cochain_basis(&a, 3, &id(3), 1).unwrap().dim(), 9);
        let alpha = Matrix::diagonal(&[rat(1), rat(1), rat(2)]);
        assert_eq!(cochain_space(&alpha, 3, &alpha, 1, Flavor::Hom).unwrap().dim(), 5);
        assert_eq!(cochain_space(&id(2), 2, &Matrix::zeros(2, 2), 1, Flavor::Hom).unwrap().dim(), 0);
    }

    #[test]
    fn lie_dimensions() {
        assert_eq!(cochain_space(&id(2), 1, &id(1), 2, Flavor::Lie).unwrap().dim(), 1);
        assert_eq!(cochain_space(&id(2), 3, &id(3), 3, Flavor::Lie).unwrap().dim(), 0);
    }

    #[test]
    fn lie_basis_matches_full_system() {
        for g in [fixtures::g1(rat(2), rat(3)), fixtures::g1(rat(1), rat(-1)), fixtures::g2()] {
            for k in 1..=3 {
                let space = lie_cochain_basis(&g, 3, &g.alpha, k).unwrap();
                let system = constraint_matrix(&g.alpha, 3, &g.alpha, k, Flavor::Lie);
                let oracle = nullspace_basis(&system);
                assert_eq!(space.dim(), system.ncols() - system.rank());
                let got: Vec<Vec<Rational>> = space.basis.iter().map(|f| f.coeffs().to_vec()).collect();
                assert_eq!(got, oracle, "{} arity {k}", g.name);
            }
        }
    }

    #[test]
    fn basis_elements_satisfy_constraints() {
        let g = fixtures::l4_first(rat(1), rat(1), rat(1), rat(1));
        for k in 1..=3 {
            let space = lie_cochain_basis(&g, 4, &g.alpha, k).unwrap();
            for f in &space.basis {
                assert!(f.is_alternating());
                assert!(f.is_compatible(&g.alpha, &g.alpha));
                assert!(space.coordinates(f).is_some());
            }
        }
        let b = fixtures::b2(rat(1));
        let space = hom_cochain_basis(&b, 2, &b.alpha, 2).unwrap();
        for f in &space.basis {
            assert!(f.is_compatible(&b.alpha, &b.alpha));
        }
    }

    #[test]
    fn arity_zero_is_full_target() {
        let phi = fixtures::phi_a3_b2();
        let s = morphism_cochain_space(&phi, 1, Flavor::Hom).unwrap();
        assert_eq!(s.space_ab.dim(), 2);
        assert_eq!(s.dim(), s.space_a.dim() + s.space_b.dim() + 2);
    }

    #[test]
    fn morphism_space_components_match() {
        let phi = fixtures::phi12_2();
        let s = morphism_cochain_space(&phi, 2, Flavor::Lie).unwrap();
        assert_eq!(s.space_a.dim(), lie_cochain_basis(&phi.source, 3, &phi.source.alpha, 2).unwrap().dim());
        assert_eq!(s.space_b.dim(), lie_cochain_basis(&phi.target, 3, &phi.target.alpha, 2).unwrap().dim());
        assert_eq!(s.space_ab.dim(), lie_cochain_basis(&phi.source, 3, &phi.target.alpha, 1).unwrap().dim());
        for (j, c) in s.basis().iter().enumerate() {
            let coords = s.coordinates(c).unwrap();
            assert_eq!(coords, unit_vec(s.dim(), j));
        }
    }

    #[test]
    fn arity_guard() {
        assert!(matches!(
            cochain_space(&id(1), 1, &id(1), DEFAULT_MAX_ARITY + 1, Flavor::Hom),
            Err(Error::ArityLimit { .. })
        ));
    }

    #[test]
    fn alternator_examples() {
        let mut f = MultilinearMap::zero(2, 2, 2);
        f.set(&[0, 1], &[rat(3), rat(1)]);
        let g = alternator(&f);
        assert_eq!(g.value(&[0, 1]), &[frac(3, 2), frac(1, 2)][..]);
        assert_eq!(g.value(&[1, 0]), &[frac(-3, 2), frac(-1, 2)][..]);
        assert_eq!(alternator(&g), g);
        let sym = f.add(&f.permute_args(&[1, 0]));
        assert!(alternator(&sym).is_zero());
    }

    #[test]
    fn basis_is_deterministic() {
        let b = fixtures::b2(rat(1));
        let s1 = hom_cochain_basis(&b, 2, &b.alpha, 3).unwrap();
        let s2 = hom_cochain_basis(&b, 2, &b.alpha, 3).unwrap();
        assert_eq!(s1, s2);
    }
}

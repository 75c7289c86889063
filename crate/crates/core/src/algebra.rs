//! Hom-associative and Hom-Lie algebras given by structure constants.

use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{is_zero_vec, unit_vec, zero_vec, Matrix, Rational};
use crate::multilinear::{tuples, MultilinearMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Associative,
    Lie,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Associative => "associative",
            Kind::Lie => "lie",
        })
    }
}

/// The identity an algebra, module or morphism was checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    HomAssociativity,
    SkewSymmetry,
    HomJacobi,
    Multiplicativity,
    MorphismProduct,
    MorphismTwist,
    LeftAction,
    RightAction,
    BimoduleCompatibility,
    ModuleTwist,
    LieModuleCondition,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// A failing instance of an axiom: basis indices of the arguments and the
/// nonzero difference `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub args: Vec<usize>,
    pub defect: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub is_valid: bool,
    pub witness: Option<Violation>,
    pub multiplicative: bool,
    pub multiplicative_witness: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAlgebra {
    pub name: String,
    pub kind: Kind,
    pub basis: Vec<String>,
    /// Arity-2 map `μ(e_i, e_j)`.
    pub mul: MultilinearMap,
    /// Column `j` is `α(e_j)`.
    pub alpha: Matrix,
}

pub fn default_basis(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl HomAlgebra {
    pub fn new(
        name: impl Into<String>,
        kind: Kind,
        mul: MultilinearMap,
        alpha: Matrix,
    ) -> Result<Self, Error> {
        let n = mul.source_dim();
        if n == 0 {
            return Err(Error::DimensionMismatch("algebra must have dimension at least 1".into()));
        }
        if mul.arity() != 2 || mul.target_dim() != n {
            return Err(Error::DimensionMismatch("multiplication must be bilinear A x A -> A".into()));
        }
        if alpha.nrows() != n || alpha.ncols() != n {
            return Err(Error::DimensionMismatch(format!("alpha must be {n}x{n}")));
        }
        Ok(HomAlgebra { name: name.into(), kind, basis: default_basis("e", n), mul, alpha })
    }

    /// Builds an algebra from a list of nonzero products `(i, j, value)`.
    pub fn from_products(
        name: impl Into<String>,
        kind: Kind,
        dim: usize,
        products: &[(usize, usize, Vec<Rational>)],
        alpha: Matrix,
    ) -> Result<Self, Error> {
        let mut mul = MultilinearMap::zero(2, dim, dim);
        for (i, j, v) in products {
            if v.len() != dim {
                return Err(Error::DimensionMismatch("product value has wrong length".into()));
            }
            mul.set(&[*i, *j], v);
            if kind == Kind::Lie && i != j {
                let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
                mul.set(&[*j, *i], &neg);
            }
        }
        HomAlgebra::new(name, kind, mul, alpha)
    }

    pub fn with_basis(mut self, basis: Vec<String>) -> Self {
        assert_eq!(basis.len(), self.dim());
        self.basis = basis;
        self
    }

    pub fn dim(&self) -> usize {
        self.mul.source_dim()
    }

    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        self.mul.value(&[i, j])
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, Error> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul.eval(&[x, y]))
    }

    pub fn apply_alpha(&self, x: &[Rational]) -> Result<Vec<Rational>, Error> {
        self.check_len(x)?;
        Ok(self.alpha.mul_vec(x))
    }

    fn check_len(&self, x: &[Rational]) -> Result<(), Error> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in algebra of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        unit_vec(self.dim(), i)
    }

    /// `μ(α x, μ(y, z)) − μ(μ(x, y), α z)` on basis vectors.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let ax = self.alpha.column(i);
        let az = self.alpha.column(k);
        let lhs = self.mul.eval(&[&ax, self.product(j, k)]);
        let rhs = self.mul.eval(&[self.product(i, j), &az]);
        lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
    }

    /// `[α x, [y, z]] + [α y, [z, x]] + [α z, [x, y]]` on basis vectors.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let aa = self.alpha.column(a);
            for (o, x) in out.iter_mut().zip(self.mul.eval(&[&aa, self.product(b, c)])) {
                *o += x;
            }
        }
        out
    }

    /// `α μ(x, y) − μ(α x, α y)` on basis vectors.
    pub fn multiplicativity_defect(&self, i: usize, j: usize) -> Vec<Rational> {
        let lhs = self.alpha.mul_vec(self.product(i, j));
        let rhs = self.mul.eval(&[&self.alpha.column(i), &self.alpha.column(j)]);
        lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
    }

    fn first_failure(
        &self,
        arity: usize,
        axiom: Axiom,
        f: impl Fn(&[usize]) -> Vec<Rational>,
    ) -> Option<Violation> {
        tuples(arity, self.dim()).find_map(|t| {
            let d = f(&t);
            (!is_zero_vec(&d)).then(|| Violation { axiom, args: t, defect: d })
        })
    }

    /// Checks the defining identity on all basis triples; never fails.
    pub fn validate(&self) -> ValidityReport {
        let witness = match self.kind {
            Kind::Associative => {
                self.first_failure(3, Axiom::HomAssociativity, |t| self.associator(t[0], t[1], t[2]))
            }
            Kind::Lie => self
                .first_failure(2, Axiom::SkewSymmetry, |t| {
                    let (a, b) = (self.product(t[0], t[1]), self.product(t[1], t[0]));
                    a.iter().zip(b).map(|(x, y)| x + y).collect()
                })
                .or_else(|| {
                    self.first_failure(3, Axiom::HomJacobi, |t| self.jacobiator(t[0], t[1], t[2]))
                }),
        };
        let multiplicative_witness = self.first_failure(2, Axiom::Multiplicativity, |t| {
            self.multiplicativity_defect(t[0], t[1])
        });
        ValidityReport {
            is_valid: witness.is_none(),
            witness,
            multiplicative: multiplicative_witness.is_none(),
            multiplicative_witness,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid
    }

    /// `γ ∘ μ − μ ∘ (γ ⊗ γ)` first failure, if any.
    pub fn endomorphism_defect(&self, gamma: &Matrix) -> Option<Violation> {
        self.first_failure(2, Axiom::MorphismProduct, |t| {
            let lhs = gamma.mul_vec(self.product(t[0], t[1]));
            let rhs = self.mul.eval(&[&gamma.column(t[0]), &gamma.column(t[1])]);
            lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
        })
    }

    pub fn is_skew(&self) -> bool {
        self.mul.is_alternating()
    }

    pub fn alpha_power(&self, k: usize) -> Matrix {
        self.alpha.pow(k)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        self.unit(i)
    }
}

/// Yau twist `(A, γ∘μ, γ∘α)` by a multiplicative map `γ`.
pub fn yau_twist(a: &HomAlgebra, gamma: &Matrix) -> Result<HomAlgebra, Error> {
    let n = a.dim();
    if gamma.nrows() != n || gamma.ncols() != n {
        return Err(Error::DimensionMismatch(format!("twisting map must be {n}x{n}")));
    }
    if let Some(v) = a.endomorphism_defect(gamma) {
        return Err(Error::MorphismViolation(format!(
            "twisting map fails on basis pair ({}, {})",
            a.basis[v.args[0]], a.basis[v.args[1]]
        )));
    }
    let identity = Matrix::identity(n);
    let ga = gamma.mul(&a.alpha)?;
    if a.alpha != identity && ga != a.alpha.mul(gamma)? {
        return Err(Error::MorphismViolation("twisting map does not commute with alpha".into()));
    }
    Ok(HomAlgebra {
        name: format!("{}_twisted", a.name),
        kind: a.kind,
        basis: a.basis.clone(),
        mul: a.mul.compose_output(gamma),
        alpha: ga,
    })
}

/// A vector as a signed sum such as `f1 - 4*f2 - 1/2*f3`, for messages.
pub fn describe_vector(basis: &[String], v: &[Rational]) -> String {
    let mut out = String::new();
    for (x, b) in v.iter().zip(basis).filter(|(x, _)| !x.is_zero()) {
        let sign = if x.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            out.push_str(if x.is_negative() { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let m = x.abs();
        if m.is_one() {
            out.push_str(b);
        } else {
            out.push_str(&format!("{m}*{b}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;

    #[test]
    fn vectors_read_as_signed_sums() {
        let basis = default_basis("f", 3);
        let v = [rat(1), rat(-4), crate::exact::frac(-1, 2)];
        assert_eq!(describe_vector(&basis, &v), "f1 - 4*f2 - 1/2*f3");
        assert_eq!(describe_vector(&basis, &[rat(0), rat(-1), rat(0)]), "-f2");
        assert_eq!(describe_vector(&basis, &[rat(0), rat(0), rat(0)]), "0");
    }

    #[test]
    fn a3_products_and_twist() {
        let a = fixtures::a3(rat(1), rat(2));
        let e = |i| a.basis_vector(i);
        assert_eq!(a.multiply(&e(0), &e(1)).unwrap(), e(1));
        assert_eq!(a.apply_alpha(&e(2)).unwrap(), vec![rat(0), rat(0), rat(2)]);
        assert!(a.multiply(&e(0), &[rat(1)]).is_err());
        let r = a.validate();
        assert!(r.is_valid && r.multiplicative, "{r:?}");
    }

    #[test]
    fn b2_products() {
        let b = fixtures::b2(rat(1));
        let f1f2 = vec![rat(1), rat(1)];
        assert_eq!(b.multiply(&f1f2, &b.basis_vector(0)).unwrap(), f1f2);
        assert_eq!(b.apply_alpha(&b.basis_vector(0)).unwrap(), vec![rat(1), rat(-1)]);
        assert!(b.is_valid());
    }

    #[test]
    fn invalid_dim2_witness() {
        let alpha = Matrix::from_i64(&[&[1, 1], &[0, 0]]);
        let a = HomAlgebra::from_products(
            "bad",
            Kind::Associative,
            2,
            &[(0, 0, vec![rat(1), rat(0)])],
            alpha,
        )
        .unwrap();
        let r = a.validate();
        assert!(!r.is_valid);
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, Axiom::HomAssociativity);
        assert_eq!(w.args, vec![0, 0, 1]);
        assert_eq!(w.defect, vec![rat(-1), rat(0)]);
    }

    #[test]
    fn g1_valid_and_g2_invalid() {
        assert!(fixtures::g1(rat(2), rat(3)).is_valid());
        let r = fixtures::g2().validate();
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, Axiom::HomJacobi);
        assert_eq!(w.args, vec![0, 1, 2]);
        assert_eq!(w.defect, vec![rat(1), rat(-4), rat(-1)]);
    }

    #[test]
    fn yau_twist_examples() {
        let dual = fixtures::dual_numbers();
        assert_eq!(yau_twist(&dual, &Matrix::identity(2)).unwrap().mul, dual.mul);
        let t = yau_twist(&dual, &Matrix::from_i64(&[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!(t.product(0, 1), &[rat(0), rat(3)][..]);
        assert!(t.is_valid());

        let heis = fixtures::heisenberg();
        let g = Matrix::diagonal(&[rat(2), rat(3), rat(6)]);
        let t = yau_twist(&heis, &g).unwrap();
        assert_eq!(t.product(0, 1), &[rat(0), rat(0), rat(6)][..]);
        assert!(t.is_valid());

        let not_mult = Matrix::from_i64(&[&[1, 0], &[0, 0]]).add(&Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert!(matches!(yau_twist(&dual, &not_mult), Err(Error::MorphismViolation(_))));
    }

    #[test]
    fn lie_square_vanishes() {
        let g = fixtures::g1(rat(2), rat(3));
        let x = vec![rat(1), rat(-2), rat(5)];
        assert!(is_zero_vec(&g.multiply(&x, &x).unwrap()));
    }
}

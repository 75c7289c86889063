//! Worked examples from the literature, instantiated at concrete parameters.
//!
//! Basis vectors are 0-indexed in code; the names `e1, e2, ...` (source side)
//! and `f1, f2, ...` (target side) match the usual 1-indexed notation.

use crate::algebra::{default_basis, HomAlgebra, Kind};
use crate::deformation::{FormalDeformation, MorphismDeformation};
use crate::error::Error;
use crate::exact::{parse_rational, rat, zero_vec, Matrix, Rational};
use crate::multilinear::MultilinearMap;
use crate::rep::HomMorphism;

fn vec_of(n: usize, terms: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = zero_vec(n);
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

fn matrix_from_images(n: usize, images: &[Vec<Rational>]) -> Matrix {
    Matrix::from_columns(n, images).expect("consistent fixture")
}

/// Three-dimensional Hom-associative algebra with parameters `a`, `b`.
pub fn a3(a: Rational, b: Rational) -> HomAlgebra {
    let v = |t: &[(usize, Rational)]| vec_of(3, t);
    let products = vec![
        (0, 0, v(&[(0, a.clone())])),
        (1, 1, v(&[(1, a.clone())])),
        (0, 1, v(&[(1, a.clone())])),
        (1, 0, v(&[(1, a.clone())])),
        (1, 2, v(&[(2, b.clone())])),
        (0, 2, v(&[(2, b.clone())])),
        (2, 0, v(&[(2, b.clone())])),
    ];
    let alpha = Matrix::diagonal(&[a.clone(), a, b]);
    HomAlgebra::from_products("A3", Kind::Associative, 3, &products, alpha).expect("fixture")
}

/// Two-dimensional Hom-associative algebra: `f1 f1 = f1`, every other product `f2`.
pub fn b2(beta: Rational) -> HomAlgebra {
    let f1 = vec![rat(1), rat(0)];
    let f2 = vec![rat(0), rat(1)];
    let products = vec![(0, 0, f1), (0, 1, f2.clone()), (1, 0, f2.clone()), (1, 1, f2)];
    let alpha = matrix_from_images(2, &[vec![beta.clone(), -beta], vec![rat(0), rat(0)]]);
    HomAlgebra::from_products("B2", Kind::Associative, 2, &products, alpha)
        .expect("fixture")
        .with_basis(default_basis("f", 2))
}

/// `e1, e2 ↦ f1 − f2`, `e3 ↦ 0` from `a3(1, b)` to `b2(1)`.
pub fn phi_a3_b2_with(b: Rational) -> HomMorphism {
    let img = vec![rat(1), rat(-1)];
    let m = matrix_from_images(2, &[img.clone(), img, vec![rat(0), rat(0)]]);
    HomMorphism::new(a3(rat(1), b), b2(rat(1)), m).expect("fixture")
}

pub fn phi_a3_b2() -> HomMorphism {
    phi_a3_b2_with(rat(2))
}

/// `[e1, e2] = e3`, `α = diag(p1, p2, p1 p2)`.
pub fn g1(p1: Rational, p2: Rational) -> HomAlgebra {
    let name = format!("G1({p1},{p2})");
    let alpha = Matrix::diagonal(&[p1.clone(), p2.clone(), p1 * p2]);
    HomAlgebra::from_products(name, Kind::Lie, 3, &[(0, 1, vec_of(3, &[(2, rat(1))]))], alpha)
        .expect("fixture")
}

/// Three-dimensional bracket with `α = diag(1, 2, 2)`; fails Hom-Jacobi.
pub fn g2() -> HomAlgebra {
    let v = |t: &[(usize, Rational)]| vec_of(3, t);
    let products = vec![
        (0, 1, v(&[(0, rat(1)), (2, rat(1))])),
        (1, 2, v(&[(1, rat(1))])),
        (0, 2, v(&[(0, rat(1)), (2, rat(2))])),
    ];
    let alpha = Matrix::diagonal(&[rat(1), rat(2), rat(2)]);
    HomAlgebra::from_products("G2", Kind::Lie, 3, &products, alpha)
        .expect("fixture")
        .with_basis(default_basis("f", 3))
}

/// Morphism `G1(2,2) → G2` with `λ21 = λ31 = λ22 = 1`.
pub fn phi12_1() -> HomMorphism {
    let img = vec![rat(0), rat(1), rat(1)];
    let m = matrix_from_images(3, &[img.clone(), img, zero_vec(3)]);
    HomMorphism::new(g1(rat(2), rat(2)), g2(), m).expect("fixture")
}

/// Morphism `G1(2,0) → G2`, `e1 ↦ f2 + f3`, with `λ21 = λ31 = 1`.
pub fn phi12_2() -> HomMorphism {
    let m = matrix_from_images(3, &[vec![rat(0), rat(1), rat(1)], zero_vec(3), zero_vec(3)]);
    HomMorphism::new(g1(rat(2), rat(0)), g2(), m).expect("fixture")
}

/// Four-dimensional Hom-Lie algebra `[e1,e2] = b e4`, `[e3,e4] = d e2`.
pub fn l4_first(a: Rational, b: Rational, c: Rational, d: Rational) -> HomAlgebra {
    let v = |t: &[(usize, Rational)]| vec_of(4, t);
    let products = vec![(0, 1, v(&[(3, b.clone())])), (2, 3, v(&[(1, d.clone())]))];
    let alpha = matrix_from_images(
        4,
        &[v(&[(2, rat(1)), (3, a)]), v(&[(3, b)]), v(&[(0, rat(1)), (1, c)]), v(&[(1, d)])],
    );
    HomAlgebra::from_products("L4A", Kind::Lie, 4, &products, alpha).expect("fixture")
}

/// Four-dimensional Hom-Lie algebra `[f1,f2] = d f4` with a five-parameter twist.
pub fn l4_second(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational) -> HomAlgebra {
    let v = |t: &[(usize, Rational)]| vec_of(4, t);
    let be_over_a = &b * &e / &a;
    let products = vec![(0, 1, v(&[(3, d.clone())]))];
    let alpha = matrix_from_images(
        4,
        &[
            v(&[(0, a), (1, b), (2, rat(1)), (3, c)]),
            v(&[(3, d)]),
            v(&[(0, e), (1, be_over_a)]),
            zero_vec(4),
        ],
    );
    HomAlgebra::from_products("L4B", Kind::Lie, 4, &products, alpha)
        .expect("fixture")
        .with_basis(default_basis("f", 4))
}

/// Heisenberg Lie algebra `[e1,e2] = e3` with `α = id`.
pub fn heisenberg() -> HomAlgebra {
    let mut h = g1(rat(1), rat(1));
    h.name = "Heisenberg".into();
    h
}

/// Dual numbers `k[x]/x²` as a unital algebra with `α = id`.
pub fn dual_numbers() -> HomAlgebra {
    let products = vec![
        (0, 0, vec![rat(1), rat(0)]),
        (0, 1, vec![rat(0), rat(1)]),
        (1, 0, vec![rat(0), rat(1)]),
    ];
    HomAlgebra::from_products("Dual", Kind::Associative, 2, &products, Matrix::identity(2))
        .expect("fixture")
}

/// Order-1 deformation of `G1(2,0)` with `[e1,e3]_1 = w e2`.
pub fn def_g1(w: Rational) -> FormalDeformation {
    let base = g1(rat(2), rat(0));
    let mut mu1 = MultilinearMap::zero(2, 3, 3);
    mu1.set(&[0, 2], &vec_of(3, &[(1, w.clone())]));
    mu1.set(&[2, 0], &vec_of(3, &[(1, -w)]));
    FormalDeformation::new(base, vec![mu1]).expect("fixture")
}

/// Order-1 deformation of `G2` with `[f1,f2]_1 = k2 f3`.
pub fn def_g2(k2: Rational) -> FormalDeformation {
    let mut mu1 = MultilinearMap::zero(2, 3, 3);
    mu1.set(&[0, 1], &vec_of(3, &[(2, k2.clone())]));
    mu1.set(&[1, 0], &vec_of(3, &[(2, -k2)]));
    FormalDeformation::new(g2(), vec![mu1]).expect("fixture")
}

/// Deformation of `phi12_2` with `w = k2 = 1` and `φ_1(e1) = f2 + f3`.
/// With `corrupt`, `φ_1(e1) = f1` instead, which breaks the twist equation.
pub fn mdef_2(corrupt: bool) -> MorphismDeformation {
    let img = if corrupt { vec![rat(1), rat(0), rat(0)] } else { vec![rat(0), rat(1), rat(1)] };
    let phi1 = matrix_from_images(3, &[img, zero_vec(3), zero_vec(3)]);
    MorphismDeformation::new(phi12_2(), def_g1(rat(1)), def_g2(rat(1)), vec![phi1]).expect("fixture")
}

/// A fixture looked up by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Algebra(HomAlgebra),
    Morphism(HomMorphism),
    Deformation(FormalDeformation),
    MorphismDeformation(MorphismDeformation),
}

/// Names of the form `a3(1,2)`, `g2` or `mdef_2`; parameters are rationals.
pub fn builtin(spec: &str) -> Result<Builtin, Error> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(i) if spec.ends_with(')') => {
            let inner = &spec[i + 1..spec.len() - 1];
            let args = inner
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            (&spec[..i], args)
        }
        Some(_) => return Err(Error::Parse(format!("malformed fixture name '{spec}'"))),
        None => (spec, Vec::new()),
    };
    let want = |k: usize| -> Result<(), Error> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("fixture '{name}' takes {k} parameter(s), got {}", args.len())))
        }
    };
    let a = |i: usize| args[i].clone();
    Ok(match name {
        "a3" => {
            want(2)?;
            Builtin::Algebra(a3(a(0), a(1)))
        }
        "b2" => {
            want(1)?;
            Builtin::Algebra(b2(a(0)))
        }
        "g1" => {
            want(2)?;
            Builtin::Algebra(g1(a(0), a(1)))
        }
        "g2" => {
            want(0)?;
            Builtin::Algebra(g2())
        }
        "l4_first" => {
            want(4)?;
            Builtin::Algebra(l4_first(a(0), a(1), a(2), a(3)))
        }
        "l4_second" => {
            want(5)?;
            if args[0] == rat(0) {
                return Err(Error::Parse("l4_second needs a ≠ 0".into()));
            }
            Builtin::Algebra(l4_second(a(0), a(1), a(2), a(3), a(4)))
        }
        "heisenberg" => {
            want(0)?;
            Builtin::Algebra(heisenberg())
        }
        "dual_numbers" => {
            want(0)?;
            Builtin::Algebra(dual_numbers())
        }
        "phi_a3_b2" => {
            want(1)?;
            Builtin::Morphism(phi_a3_b2_with(a(0)))
        }
        "phi12_1" => {
            want(0)?;
            Builtin::Morphism(phi12_1())
        }
        "phi12_2" => {
            want(0)?;
            Builtin::Morphism(phi12_2())
        }
        "def_g1" => {
            want(1)?;
            Builtin::Deformation(def_g1(a(0)))
        }
        "def_g2" => {
            want(1)?;
            Builtin::Deformation(def_g2(a(0)))
        }
        "mdef_2" => {
            want(0)?;
            Builtin::MorphismDeformation(mdef_2(false))
        }
        "mdef_2_corrupt" => {
            want(0)?;
            Builtin::MorphismDeformation(mdef_2(true))
        }
        _ => return Err(Error::Parse(format!("unknown fixture '{name}'"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_resolve() {
        assert_eq!(builtin("a3(1,2)").unwrap(), Builtin::Algebra(a3(rat(1), rat(2))));
        assert_eq!(builtin(" g1(2, 1/2) ").unwrap(), Builtin::Algebra(g1(rat(2), crate::exact::frac(1, 2))));
        assert!(matches!(builtin("mdef_2").unwrap(), Builtin::MorphismDeformation(_)));
        assert!(builtin("a3(1)").is_err());
        assert!(builtin("nope").is_err());
        assert!(builtin("a3(1,1/0)").is_err());
    }

    #[test]
    fn fixtures_validate_as_documented() {
        for a in [a3(rat(1), rat(2)), a3(rat(1), rat(1)), b2(rat(1)), g1(rat(2), rat(3)), heisenberg(), dual_numbers()] {
            assert!(a.is_valid(), "{}", a.name);
        }
        assert!(!g2().is_valid());
        assert!(l4_first(rat(1), rat(1), rat(1), rat(1)).is_valid());
    }
}

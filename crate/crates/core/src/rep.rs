//! Morphisms, bimodules and Lie modules, and the adjoint constructions.
//!
//! Actions are stored as one matrix per basis vector of the acting algebra:
//! `left[i] v = ρ_l(e_i, v)`, `right[i] v = ρ_r(v, e_i)` and for Lie modules
//! `action[i] v = [e_i, v]_V`.

use crate::algebra::{Axiom, HomAlgebra, Kind, Violation};
use crate::error::Error;
use crate::exact::{is_zero_vec, rat, unit_vec, zero_vec, Matrix, Rational};
use crate::multilinear::tuples;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub is_valid: bool,
    pub witness: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMorphism {
    pub source: HomAlgebra,
    pub target: HomAlgebra,
    /// `target.dim × source.dim`, column `j` is `φ(e_j)`.
    pub matrix: Matrix,
}

fn diff(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl HomMorphism {
    pub fn new(source: HomAlgebra, target: HomAlgebra, matrix: Matrix) -> Result<Self, Error> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(HomMorphism { source, target, matrix })
    }

    pub fn identity(a: &HomAlgebra) -> Self {
        HomMorphism { source: a.clone(), target: a.clone(), matrix: Matrix::identity(a.dim()) }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }

    pub fn check(&self) -> MorphismReport {
        check_morphism(&self.source, &self.target, &self.matrix).expect("shape checked on construction")
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_valid
    }
}

/// Checks `φ∘μ = μ'∘(φ⊗φ)` on basis pairs, then `φ∘α = α'∘φ` on basis vectors.
pub fn check_morphism(
    source: &HomAlgebra,
    target: &HomAlgebra,
    matrix: &Matrix,
) -> Result<MorphismReport, Error> {
    if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
        return Err(Error::DimensionMismatch("morphism matrix has the wrong shape".into()));
    }
    let product = tuples(2, source.dim()).find_map(|t| {
        let lhs = matrix.mul_vec(source.product(t[0], t[1]));
        let rhs = target.mul.eval(&[&matrix.column(t[0]), &matrix.column(t[1])]);
        let d = diff(&lhs, &rhs);
        (!is_zero_vec(&d)).then(|| Violation { axiom: Axiom::MorphismProduct, args: t, defect: d })
    });
    let witness = product.or_else(|| {
        (0..source.dim()).find_map(|j| {
            let lhs = matrix.mul_vec(&source.alpha.column(j));
            let rhs = target.alpha.mul_vec(&matrix.column(j));
            let d = diff(&lhs, &rhs);
            (!is_zero_vec(&d))
                .then(|| Violation { axiom: Axiom::MorphismTwist, args: vec![j], defect: d })
        })
    });
    Ok(MorphismReport { is_valid: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport {
    pub is_valid: bool,
    pub witness: Option<Violation>,
    /// `β ρ(x, v) = ρ(α x, β v)` for every action. A Lie module axiom; for
    /// bimodules it is reported alongside validity but not part of it.
    pub equivariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub carrier_dim: usize,
    pub beta: Matrix,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

fn combine(mats: &[Matrix], x: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let mut out = zero_vec(v.len());
    for (xi, m) in x.iter().zip(mats) {
        if num::Zero::is_zero(xi) {
            continue;
        }
        for (o, y) in out.iter_mut().zip(m.mul_vec(v)) {
            *o += xi * y;
        }
    }
    out
}

impl Bimodule {
    /// The bimodule structure on `B` induced by `φ: A → B`, with no validity checks.
    pub fn adjoint_via(phi: &HomMorphism) -> Self {
        let b = &phi.target;
        let m = b.dim();
        let images: Vec<Vec<Rational>> = (0..phi.source.dim()).map(|i| phi.matrix.column(i)).collect();
        let mat = |f: &dyn Fn(&[Rational], &[Rational]) -> Vec<Rational>, x: &[Rational]| {
            let cols: Vec<Vec<Rational>> = (0..m).map(|k| f(x, &unit_vec(m, k))).collect();
            Matrix::from_columns(m, &cols).expect("square")
        };
        let left = images.iter().map(|x| mat(&|x, v| b.mul.eval(&[x, v]), x)).collect();
        let right = images.iter().map(|x| mat(&|x, v| b.mul.eval(&[v, x]), x)).collect();
        Bimodule { carrier_dim: m, beta: b.alpha.clone(), left, right }
    }

    pub fn regular(a: &HomAlgebra) -> Self {
        Bimodule::adjoint_via(&HomMorphism::identity(a))
    }

    pub fn act_left(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        combine(&self.left, x, v)
    }

    pub fn act_right(&self, v: &[Rational], x: &[Rational]) -> Vec<Rational> {
        combine(&self.right, x, v)
    }

    pub fn check(&self, a: &HomAlgebra) -> Result<ModuleReport, Error> {
        let n = a.dim();
        let m = self.carrier_dim;
        if self.left.len() != n || self.right.len() != n || self.beta.nrows() != m {
            return Err(Error::DimensionMismatch("bimodule does not match algebra".into()));
        }
        let e = |i| unit_vec(n, i);
        let v = |k| unit_vec(m, k);
        let mut witness = None;
        'outer: for axiom in [Axiom::LeftAction, Axiom::RightAction, Axiom::BimoduleCompatibility] {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..m {
                        let d = match axiom {
                            // ρ_l(μ(x,y), β m) = ρ_l(α x, ρ_l(y, m))
                            Axiom::LeftAction => diff(
                                &self.act_left(a.product(i, j), &self.beta.column(k)),
                                &self.act_left(&a.alpha.column(i), &self.act_left(&e(j), &v(k))),
                            ),
                            // ρ_r(β m, μ(x,y)) = ρ_r(ρ_r(m, x), α y)
                            Axiom::RightAction => diff(
                                &self.act_right(&self.beta.column(k), a.product(i, j)),
                                &self.act_right(&self.act_right(&v(k), &e(i)), &a.alpha.column(j)),
                            ),
                            // ρ_r(ρ_l(x, m), α y) = ρ_l(α x, ρ_r(m, y))
                            _ => diff(
                                &self.act_right(&self.act_left(&e(i), &v(k)), &a.alpha.column(j)),
                                &self.act_left(&a.alpha.column(i), &self.act_right(&v(k), &e(j))),
                            ),
                        };
                        if !is_zero_vec(&d) {
                            witness = Some(Violation { axiom, args: vec![i, j, k], defect: d });
                            break 'outer;
                        }
                    }
                }
            }
        }
        let equivariant = (0..n).all(|i| {
            (0..m).all(|k| {
                let bk = self.beta.column(k);
                let ai = a.alpha.column(i);
                self.beta.mul_vec(&self.act_left(&e(i), &v(k))) == self.act_left(&ai, &bk)
                    && self.beta.mul_vec(&self.act_right(&v(k), &e(i))) == self.act_right(&bk, &ai)
            })
        });
        Ok(ModuleReport { is_valid: witness.is_none(), witness, equivariant })
    }
}

/// Adjoint bimodule of a valid morphism of Hom-associative algebras.
pub fn adjoint_bimodule(phi: &HomMorphism) -> Result<Bimodule, Error> {
    if phi.source.kind != Kind::Associative || phi.target.kind != Kind::Associative {
        return Err(Error::InvalidMorphism("adjoint bimodule needs associative-kind algebras".into()));
    }
    if let Some(w) = phi.check().witness {
        return Err(Error::InvalidMorphism(format!("{} fails on {:?}", w.axiom, w.args)));
    }
    Ok(Bimodule::adjoint_via(phi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    pub carrier_dim: usize,
    pub beta: Matrix,
    pub action: Vec<Matrix>,
}

impl LieModule {
    /// `[g, v] = [φ(g), v]'` on the target of `φ`, with no validity checks.
    pub fn adjoint_via(phi: &HomMorphism) -> Self {
        let b = &phi.target;
        let m = b.dim();
        let action = (0..phi.source.dim())
            .map(|i| {
                let x = phi.matrix.column(i);
                let cols: Vec<Vec<Rational>> =
                    (0..m).map(|k| b.mul.eval(&[&x, &unit_vec(m, k)])).collect();
                Matrix::from_columns(m, &cols).expect("square")
            })
            .collect();
        LieModule { carrier_dim: m, beta: b.alpha.clone(), action }
    }

    pub fn regular(l: &HomAlgebra) -> Self {
        LieModule::adjoint_via(&HomMorphism::identity(l))
    }

    pub fn act(&self, g: &[Rational], v: &[Rational]) -> Vec<Rational> {
        combine(&self.action, g, v)
    }

    pub fn check(&self, l: &HomAlgebra) -> Result<ModuleReport, Error> {
        let n = l.dim();
        let m = self.carrier_dim;
        if self.action.len() != n || self.beta.nrows() != m {
            return Err(Error::DimensionMismatch("module does not match algebra".into()));
        }
        let e = |i| unit_vec(n, i);
        let v = |k| unit_vec(m, k);
        // [α u, β v] = β [u, v]
        let mut twist = None;
        'twist: for i in 0..n {
            for k in 0..m {
                let d = diff(
                    &self.act(&l.alpha.column(i), &self.beta.column(k)),
                    &self.beta.mul_vec(&self.act(&e(i), &v(k))),
                );
                if !is_zero_vec(&d) {
                    twist = Some(Violation { axiom: Axiom::ModuleTwist, args: vec![i, k], defect: d });
                    break 'twist;
                }
            }
        }
        let witness = twist.or_else(|| {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..m {
                        // [[u,v], β z] = [α u, [v, z]] − [α v, [u, z]]
                        let lhs = self.act(l.product(i, j), &self.beta.column(k));
                        let r1 = self.act(&l.alpha.column(i), &self.act(&e(j), &v(k)));
                        let r2 = self.act(&l.alpha.column(j), &self.act(&e(i), &v(k)));
                        let d = diff(&lhs, &diff(&r1, &r2));
                        if !is_zero_vec(&d) {
                            return Some(Violation {
                                axiom: Axiom::LieModuleCondition,
                                args: vec![i, j, k],
                                defect: d,
                            });
                        }
                    }
                }
            }
            None
        });
        let equivariant = witness.as_ref().map_or(true, |w| w.axiom != Axiom::ModuleTwist);
        Ok(ModuleReport { is_valid: witness.is_none(), witness, equivariant })
    }
}

/// Adjoint module of a valid morphism of valid Hom-Lie algebras.
pub fn lie_adjoint_module(phi: &HomMorphism) -> Result<LieModule, Error> {
    if phi.source.kind != Kind::Lie || phi.target.kind != Kind::Lie {
        return Err(Error::InvalidMorphism("adjoint module needs lie-kind algebras".into()));
    }
    if let Some(w) = phi.check().witness {
        return Err(Error::InvalidMorphism(format!("{} fails on {:?}", w.axiom, w.args)));
    }
    for a in [&phi.source, &phi.target] {
        if let Some(w) = a.validate().witness {
            return Err(Error::InvalidAlgebra(format!("{}: {} fails on {:?}", a.name, w.axiom, w.args)));
        }
    }
    Ok(LieModule::adjoint_via(phi))
}

/// The dual action `[x, f](v) = −f([x, v])` with `β* = βᵀ`, together with
/// whether `[[x,y], β v] = [x, [α y, v]] − [y, [α x, v]]` holds on all basis triples.
pub fn coadjoint_module(rep: &LieModule, l: &HomAlgebra) -> (LieModule, bool) {
    let n = l.dim();
    let m = rep.carrier_dim;
    let action = rep.action.iter().map(|a| a.transpose().scale(&rat(-1))).collect();
    let dual = LieModule { carrier_dim: m, beta: rep.beta.transpose(), action };
    let holds = tuples(2, n).all(|t| {
        let (x, y) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
        (0..m).all(|k| {
            let v = unit_vec(m, k);
            let lhs = rep.act(l.product(t[0], t[1]), &rep.beta.mul_vec(&v));
            let r1 = rep.act(&x, &rep.act(&l.alpha.column(t[1]), &v));
            let r2 = rep.act(&y, &rep.act(&l.alpha.column(t[0]), &v));
            lhs == diff(&r1, &r2)
        })
    });
    (dual, holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_morphisms_are_valid() {
        assert!(fixtures::phi_a3_b2().is_valid());
        assert!(HomMorphism::identity(&fixtures::a3(rat(1), rat(2))).is_valid());
        let a = fixtures::a3(rat(1), rat(2));
        let b = fixtures::b2(rat(1));
        assert!(check_morphism(&a, &b, &Matrix::zeros(2, 3)).unwrap().is_valid);
        assert!(check_morphism(&a, &b, &Matrix::zeros(3, 2)).is_err());
        assert!(fixtures::phi12_1().is_valid());
        assert!(fixtures::phi12_2().is_valid());
    }

    #[test]
    fn morphism_twist_witness() {
        let m = HomMorphism::new(
            fixtures::g1(rat(2), rat(3)),
            fixtures::g1(rat(1), rat(1)),
            Matrix::identity(3),
        )
        .unwrap();
        let w = m.check().witness.unwrap();
        assert_eq!(w.axiom, Axiom::MorphismTwist);
        assert_eq!(w.args, vec![0]);
        assert_eq!(w.defect, vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn adjoint_bimodule_values() {
        let a = fixtures::a3(rat(1), rat(2));
        let reg = adjoint_bimodule(&HomMorphism::identity(&a)).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(reg.act_left(&unit_vec(3, i), &unit_vec(3, k)), a.product(i, k));
                assert_eq!(reg.act_right(&unit_vec(3, k), &unit_vec(3, i)), a.product(k, i));
            }
        }
        let phi = fixtures::phi_a3_b2();
        let m = adjoint_bimodule(&phi).unwrap();
        assert_eq!(m.act_left(&unit_vec(3, 0), &unit_vec(2, 0)), vec![rat(1), rat(-1)]);
        let r = m.check(&phi.source).unwrap();
        assert!(r.is_valid && r.equivariant, "{r:?}");
        assert!(adjoint_bimodule(&fixtures::phi12_2()).is_err());
    }

    #[test]
    fn lie_adjoint_values() {
        let g = fixtures::g1(rat(2), rat(3));
        let reg = lie_adjoint_module(&HomMorphism::identity(&g)).unwrap();
        assert_eq!(reg.act(&unit_vec(3, 0), &unit_vec(3, 1)), g.product(0, 1));
        assert!(reg.check(&g).unwrap().is_valid);

        let m = LieModule::adjoint_via(&fixtures::phi12_2());
        for k in 0..3 {
            assert!(is_zero_vec(&m.act(&unit_vec(3, 1), &unit_vec(3, k))));
        }
        let m = LieModule::adjoint_via(&fixtures::phi12_1());
        assert_eq!(m.act(&unit_vec(3, 0), &unit_vec(3, 2)), vec![rat(0), rat(1), rat(0)]);
        // the target of both G1 → G2 morphisms fails Hom-Jacobi
        assert!(matches!(lie_adjoint_module(&fixtures::phi12_2()), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn coadjoint_trivial_and_classical() {
        let g = fixtures::g1(rat(1), rat(1));
        let trivial = LieModule {
            carrier_dim: 2,
            beta: Matrix::identity(2),
            action: vec![Matrix::zeros(2, 2); 3],
        };
        let (dual, holds) = coadjoint_module(&trivial, &g);
        assert!(holds);
        assert!(dual.action.iter().all(Matrix::is_zero));

        let (dual, holds) = coadjoint_module(&LieModule::regular(&g), &g);
        // oracle: literal triple loop of both sides
        let mut oracle = true;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let br = |x: &[Rational], y: &[Rational]| g.mul.eval(&[x, y]);
                    let (x, y, v) = (unit_vec(3, i), unit_vec(3, j), unit_vec(3, k));
                    let lhs = br(&br(&x, &y), &v);
                    let rhs = diff(&br(&x, &br(&y, &v)), &br(&y, &br(&x, &v)));
                    oracle &= lhs == rhs;
                }
            }
        }
        assert_eq!(holds, oracle);
        assert!(holds);
        assert!(dual.check(&g).unwrap().is_valid);
    }
}

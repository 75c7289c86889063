//! One-parameter formal deformations of algebras and morphisms.
//!
//! Coefficient lists are indexed from degree 1: `terms[i]` is the `t^{i+1}`
//! coefficient. The degree-0 coefficient is always the base structure.
//!
//! Every order-`s` defect splits as `δ²θ_s + NL_s`, where `NL_s` only involves
//! coefficients of degree strictly between 0 and `s`. The obstruction is
//! `−NL_{N+1}`, so an extension solves `δ²θ_{N+1} = 𝒪b`.

use num::One;

use crate::algebra::{HomAlgebra, Kind};
use crate::bracket::{
    alpha_associator, cup_product_assoc, cyclic_jacobi, gerstenhaber_bracket, nr_bracket,
    overline_comp,
};
use crate::cochain::{Flavor, MorphismCochain};
use crate::cohomology::{Cochain, ComplexSpec};
use crate::error::Error;
use crate::exact::{frac, is_zero_vec, solve, Matrix, Rational};
use crate::multilinear::{tuples, MultilinearMap};
use crate::rep::HomMorphism;

fn flavor_of(kind: Kind) -> Flavor {
    match kind {
        Kind::Associative => Flavor::Hom,
        Kind::Lie => Flavor::Lie,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDeformation {
    pub base: HomAlgebra,
    pub terms: Vec<MultilinearMap>,
}

impl FormalDeformation {
    pub fn new(base: HomAlgebra, terms: Vec<MultilinearMap>) -> Result<Self, Error> {
        let n = base.dim();
        for (i, m) in terms.iter().enumerate() {
            if m.arity() != 2 || m.source_dim() != n || m.target_dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "degree-{} term is not a bilinear map on a {n}-dimensional space",
                    i + 1
                )));
            }
        }
        Ok(FormalDeformation { base, terms })
    }

    pub fn trivial(base: HomAlgebra) -> Self {
        FormalDeformation { base, terms: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `μ_s`, or `None` when the coefficient is absent (zero).
    pub fn coeff(&self, s: usize) -> Option<&MultilinearMap> {
        if s == 0 {
            Some(&self.base.mul)
        } else {
            self.terms.get(s - 1)
        }
    }

    /// Copy with the coefficient list padded with zeros to `order`.
    pub fn padded(&self, order: usize) -> Self {
        let mut out = self.clone();
        let n = self.base.dim();
        while out.terms.len() < order {
            out.terms.push(MultilinearMap::zero(2, n, n));
        }
        out
    }

    /// The same family with `k` leading zero coefficients inserted, i.e.
    /// `μ_t ↦ μ_0 + Σ μ_i t^{i+k}`.
    pub fn shifted(&self, k: usize) -> Self {
        let n = self.base.dim();
        let mut terms = vec![MultilinearMap::zero(2, n, n); k];
        terms.extend(self.terms.iter().cloned());
        FormalDeformation { base: self.base.clone(), terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDeformation {
    pub phi: HomMorphism,
    pub def_a: FormalDeformation,
    pub def_b: FormalDeformation,
    pub phi_terms: Vec<Matrix>,
}

fn same_structure(x: &HomAlgebra, y: &HomAlgebra) -> bool {
    x.kind == y.kind && x.mul == y.mul && x.alpha == y.alpha
}

impl MorphismDeformation {
    pub fn new(
        phi: HomMorphism,
        def_a: FormalDeformation,
        def_b: FormalDeformation,
        phi_terms: Vec<Matrix>,
    ) -> Result<Self, Error> {
        if !same_structure(&def_a.base, &phi.source) || !same_structure(&def_b.base, &phi.target) {
            return Err(Error::DimensionMismatch(
                "deformation bases differ from the morphism's source and target".into(),
            ));
        }
        let shape = (phi.target.dim(), phi.source.dim());
        if phi_terms.iter().any(|m| (m.nrows(), m.ncols()) != shape) {
            return Err(Error::DimensionMismatch(format!(
                "φ coefficients must be {}×{} matrices",
                shape.0, shape.1
            )));
        }
        Ok(MorphismDeformation { phi, def_a, def_b, phi_terms })
    }

    pub fn trivial(phi: HomMorphism) -> Self {
        let def_a = FormalDeformation::trivial(phi.source.clone());
        let def_b = FormalDeformation::trivial(phi.target.clone());
        MorphismDeformation { phi, def_a, def_b, phi_terms: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.def_a.order().max(self.def_b.order()).max(self.phi_terms.len())
    }

    pub fn phi_coeff(&self, s: usize) -> Option<&Matrix> {
        if s == 0 {
            Some(&self.phi.matrix)
        } else {
            self.phi_terms.get(s - 1)
        }
    }

    pub fn flavor(&self) -> Flavor {
        flavor_of(self.phi.source.kind)
    }

    /// `θ_s = (μ_{A,s}, μ_{B,s}, φ_s)` as a degree-2 morphism cochain.
    pub fn theta(&self, s: usize) -> MorphismCochain {
        let mut t = MorphismCochain::zero(&self.phi, 2);
        if s == 0 {
            return t;
        }
        if let Some(m) = self.def_a.coeff(s) {
            t.comp_a = m.clone();
        }
        if let Some(m) = self.def_b.coeff(s) {
            t.comp_b = m.clone();
        }
        if let Some(m) = self.phi_coeff(s) {
            t.comp_ab = MultilinearMap::from_matrix(m);
        }
        t
    }

    /// The same family with `k` leading zero coefficients in every slot.
    pub fn shifted(&self, k: usize) -> Self {
        let zero = Matrix::zeros(self.phi.target.dim(), self.phi.source.dim());
        let mut phi_terms = vec![zero; k];
        phi_terms.extend(self.phi_terms.iter().cloned());
        MorphismDeformation {
            phi: self.phi.clone(),
            def_a: self.def_a.shifted(k),
            def_b: self.def_b.shifted(k),
            phi_terms,
        }
    }

    fn padded(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.def_a = self.def_a.padded(order);
        out.def_b = self.def_b.padded(order);
        while out.phi_terms.len() < order {
            out.phi_terms.push(Matrix::zeros(self.phi.target.dim(), self.phi.source.dim()));
        }
        out
    }
}

/// `ψ_t = id + Σ ψ_i t^i` on each side; `psi_a[i]` is the `t^{i+1}` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAutomorphismPair {
    pub psi_a: Vec<Matrix>,
    pub psi_b: Vec<Matrix>,
}

impl FormalAutomorphismPair {
    pub fn identity() -> Self {
        FormalAutomorphismPair { psi_a: Vec::new(), psi_b: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.psi_a.len().max(self.psi_b.len())
    }
}

/// Which equation a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformationCheck {
    SourceSkew,
    SourceIdentity,
    TargetSkew,
    TargetIdentity,
    MorphismEquation,
    TwistEquation,
}

/// A failing basis tuple at some order together with the nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationWitness {
    pub check: DeformationCheck,
    pub order: usize,
    pub args: Vec<usize>,
    pub defect: Vec<Rational>,
}

/// Verdicts at a single order; `None` marks checks that do not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRecord {
    pub order: usize,
    pub algebra_a_ok: bool,
    pub algebra_b_ok: Option<bool>,
    pub morphism_eq_ok: Option<bool>,
    pub twist_eq_ok: Option<bool>,
    pub witnesses: Vec<DeformationWitness>,
}

impl OrderRecord {
    pub fn ok(&self) -> bool {
        self.algebra_a_ok
            && self.algebra_b_ok.unwrap_or(true)
            && self.morphism_eq_ok.unwrap_or(true)
            && self.twist_eq_ok.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationReport {
    pub up_to: usize,
    pub orders: Vec<OrderRecord>,
}

impl DeformationReport {
    pub fn ok(&self) -> bool {
        self.orders.iter().all(OrderRecord::ok)
    }

    pub fn ok_through(&self, s: usize) -> bool {
        self.orders.iter().filter(|r| r.order <= s).all(OrderRecord::ok)
    }

    pub fn source_ok(&self) -> bool {
        self.orders.iter().all(|r| r.algebra_a_ok)
    }

    pub fn target_ok(&self) -> bool {
        self.orders.iter().all(|r| r.algebra_b_ok.unwrap_or(true))
    }

    pub fn morphism_ok(&self) -> bool {
        self.orders.iter().all(|r| r.morphism_eq_ok.unwrap_or(true))
    }

    pub fn twist_ok(&self) -> bool {
        self.orders.iter().all(|r| r.twist_eq_ok.unwrap_or(true))
    }

    /// First order with a failing verdict.
    pub fn first_failure(&self) -> Option<usize> {
        self.orders.iter().find(|r| !r.ok()).map(|r| r.order)
    }
}

/// Sum over `i + j = s` of the bilinear identity pieces; with
/// `nonlinear_only` the two terms containing `μ_s` are left out.
fn algebra_sum(d: &FormalDeformation, s: usize, nonlinear_only: bool) -> Result<MultilinearMap, Error> {
    let n = d.base.dim();
    let mut out = MultilinearMap::zero(3, n, n);
    for i in 0..=s {
        if nonlinear_only && (i == 0 || i == s) {
            continue;
        }
        let (Some(p), Some(q)) = (d.coeff(i), d.coeff(s - i)) else { continue };
        let piece = match d.base.kind {
            Kind::Associative => alpha_associator(&d.base.alpha, p, q)?,
            Kind::Lie => cyclic_jacobi(&d.base.alpha, p, q)?,
        };
        out.add_scaled(&Rational::one(), &piece);
    }
    Ok(out)
}

fn skew_witness(m: &MultilinearMap) -> Option<(Vec<usize>, Vec<Rational>)> {
    for t in tuples(2, m.source_dim()) {
        if t[0] > t[1] {
            continue;
        }
        let sum: Vec<Rational> = if t[0] == t[1] {
            m.value(&t).to_vec()
        } else {
            m.value(&t).iter().zip(m.value(&[t[1], t[0]])).map(|(x, y)| x + y).collect()
        };
        if !is_zero_vec(&sum) {
            return Some((t, sum));
        }
    }
    None
}

fn algebra_verdict(
    d: &FormalDeformation,
    s: usize,
    skew: DeformationCheck,
    identity: DeformationCheck,
    witnesses: &mut Vec<DeformationWitness>,
) -> Result<bool, Error> {
    let mut ok = true;
    if d.base.kind == Kind::Lie {
        if let Some((args, defect)) = d.coeff(s).and_then(skew_witness) {
            witnesses.push(DeformationWitness { check: skew, order: s, args, defect });
            ok = false;
        }
    }
    if let Some((args, defect)) = algebra_sum(d, s, false)?.first_nonzero() {
        witnesses.push(DeformationWitness { check: identity, order: s, args, defect });
        ok = false;
    }
    Ok(ok)
}

/// `μ(P x, Q y)` for a bilinear `μ`.
fn pullback2(m: &MultilinearMap, p: &Matrix, q: &Matrix) -> MultilinearMap {
    let (pc, qc): (Vec<_>, Vec<_>) = ((0..p.ncols()).map(|j| p.column(j)).collect(), (0..q.ncols()).map(|j| q.column(j)).collect());
    MultilinearMap::from_fn(2, p.ncols(), m.target_dim(), |t| m.eval(&[&pc[t[0]], &qc[t[1]]]))
}

/// Order-`s` coefficient of `φ_t μ_{A,t} − μ_{B,t}(φ_t, φ_t)` (associative)
/// or `[φ_t, φ_t]'_t − φ_t [·,·]_t` (Lie).
fn morphism_sum(md: &MorphismDeformation, s: usize, nonlinear_only: bool) -> MultilinearMap {
    let (na, nb) = (md.phi.source.dim(), md.phi.target.dim());
    let sign = match md.flavor() {
        Flavor::Hom => Rational::one(),
        Flavor::Lie => -Rational::one(),
    };
    let mut out = MultilinearMap::zero(2, na, nb);
    for i in 0..=s {
        if nonlinear_only && (i == 0 || i == s) {
            continue;
        }
        if let (Some(p), Some(m)) = (md.phi_coeff(i), md.def_a.coeff(s - i)) {
            out.add_scaled(&sign, &m.compose_output(p));
        }
    }
    for i in 0..=s {
        for j in 0..=s - i {
            let k = s - i - j;
            if nonlinear_only && (i == s || j == s || k == s) {
                continue;
            }
            if let (Some(m), Some(p), Some(q)) = (md.def_b.coeff(i), md.phi_coeff(j), md.phi_coeff(k)) {
                out.add_scaled(&-&sign, &pullback2(m, p, q));
            }
        }
    }
    out
}

fn twist_witness(md: &MorphismDeformation, s: usize) -> Result<Option<(Vec<usize>, Vec<Rational>)>, Error> {
    let Some(p) = md.phi_coeff(s) else { return Ok(None) };
    let diff = p.mul(&md.phi.source.alpha)?.sub(&md.phi.target.alpha.mul(p)?);
    Ok((0..diff.ncols()).map(|j| (j, diff.column(j))).find(|(_, c)| !is_zero_vec(c)).map(|(j, c)| (vec![j], c)))
}

/// Order-by-order check of an algebra deformation through `up_to`
/// (default `2N`, the last order a degree-`N` family can reach).
pub fn check_algebra_deformation(
    d: &FormalDeformation,
    up_to: Option<usize>,
) -> Result<DeformationReport, Error> {
    let up_to = up_to.unwrap_or(2 * d.order());
    let mut orders = Vec::with_capacity(up_to + 1);
    for s in 0..=up_to {
        let mut witnesses = Vec::new();
        let ok = algebra_verdict(
            d,
            s,
            DeformationCheck::SourceSkew,
            DeformationCheck::SourceIdentity,
            &mut witnesses,
        )?;
        orders.push(OrderRecord {
            order: s,
            algebra_a_ok: ok,
            algebra_b_ok: None,
            morphism_eq_ok: None,
            twist_eq_ok: None,
            witnesses,
        });
    }
    Ok(DeformationReport { up_to, orders })
}

/// Four independent verdicts per order; default range `3N` because the
/// morphism equation is cubic in the coefficients.
pub fn check_morphism_deformation(
    md: &MorphismDeformation,
    up_to: Option<usize>,
) -> Result<DeformationReport, Error> {
    let up_to = up_to.unwrap_or(3 * md.order());
    let mut orders = Vec::with_capacity(up_to + 1);
    for s in 0..=up_to {
        let mut witnesses = Vec::new();
        let a_ok = algebra_verdict(
            &md.def_a,
            s,
            DeformationCheck::SourceSkew,
            DeformationCheck::SourceIdentity,
            &mut witnesses,
        )?;
        let b_ok = algebra_verdict(
            &md.def_b,
            s,
            DeformationCheck::TargetSkew,
            DeformationCheck::TargetIdentity,
            &mut witnesses,
        )?;
        let m_ok = match morphism_sum(md, s, false).first_nonzero() {
            Some((args, defect)) => {
                witnesses.push(DeformationWitness {
                    check: DeformationCheck::MorphismEquation,
                    order: s,
                    args,
                    defect,
                });
                false
            }
            None => true,
        };
        let t_ok = match twist_witness(md, s)? {
            Some((args, defect)) => {
                witnesses.push(DeformationWitness {
                    check: DeformationCheck::TwistEquation,
                    order: s,
                    args,
                    defect,
                });
                false
            }
            None => true,
        };
        orders.push(OrderRecord {
            order: s,
            algebra_a_ok: a_ok,
            algebra_b_ok: Some(b_ok),
            morphism_eq_ok: Some(m_ok),
            twist_eq_ok: Some(t_ok),
            witnesses,
        });
    }
    Ok(DeformationReport { up_to, orders })
}

/// `θ` at its first nonzero order together with `δ²θ`, slot by slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infinitesimal {
    pub order: usize,
    pub theta: Cochain,
    pub delta: Cochain,
    /// Per slot: source, target, morphism (one entry for algebra deformations).
    pub slot_is_cocycle: Vec<bool>,
    /// Per slot: whether the data that slot depends on passed validation.
    pub slot_trusted: Vec<bool>,
}

impl Infinitesimal {
    pub fn is_cocycle(&self) -> bool {
        self.slot_is_cocycle.iter().all(|&b| b)
    }

    fn require_trusted(self) -> Result<Self, Error> {
        let bad = self.slot_is_cocycle.iter().zip(&self.slot_trusted).position(|(&ok, &t)| t && !ok);
        match bad {
            Some(slot) => Err(Error::NotACocycle(format!(
                "order-{} coefficient fails the cocycle equation in slot {slot}",
                self.order
            ))),
            None => Ok(self),
        }
    }
}

fn slots(c: &Cochain) -> Vec<bool> {
    match c {
        Cochain::Single(f) => vec![f.is_zero()],
        Cochain::Triple(t) => vec![t.comp_a.is_zero(), t.comp_b.is_zero(), t.comp_ab.is_zero()],
    }
}

fn morphism_trust(phi: &HomMorphism) -> Vec<bool> {
    let (a, b) = (phi.source.is_valid(), phi.target.is_valid());
    vec![a, b, a && b && phi.is_valid()]
}

/// The first nonzero coefficient of an algebra deformation and its cocycle
/// status; `NotACocycle` when the base is valid but the equation fails.
pub fn infinitesimal_algebra(d: &FormalDeformation) -> Result<Infinitesimal, Error> {
    let order = (1..=d.order()).find(|&s| d.coeff(s).is_some_and(|m| !m.is_zero())).unwrap_or(1);
    let n = d.base.dim();
    let theta = Cochain::Single(d.coeff(order).cloned().unwrap_or_else(|| MultilinearMap::zero(2, n, n)));
    let delta = ComplexSpec::for_algebra(&d.base).delta(&theta)?;
    Infinitesimal {
        order,
        slot_is_cocycle: slots(&delta),
        slot_trusted: vec![d.base.is_valid()],
        theta,
        delta,
    }
    .require_trusted()
}

/// `θ_{n+1}` for the first nonzero order `n+1` of a morphism deformation.
/// Slots whose underlying data is invalid are reported, not rejected.
pub fn infinitesimal(md: &MorphismDeformation) -> Result<Infinitesimal, Error> {
    let order = (1..=md.order()).find(|&s| !md.theta(s).is_zero()).unwrap_or(1);
    let theta = Cochain::Triple(md.theta(order));
    let delta = ComplexSpec::for_morphism(&md.phi).delta(&theta)?;
    Infinitesimal {
        order,
        slot_is_cocycle: slots(&delta),
        slot_trusted: morphism_trust(&md.phi),
        theta,
        delta,
    }
    .require_trusted()
}

/// `χ = ψ^{−1}` through order `order`, for `ψ = id + Σ ψ_i t^i`.
/// Index 0 of the result is the identity.
pub fn series_inverse(psi: &[Matrix], dim: usize, order: usize) -> Result<Vec<Matrix>, Error> {
    let mut chi = vec![Matrix::identity(dim)];
    for s in 1..=order {
        let mut c = Matrix::zeros(dim, dim);
        for i in 1..=s {
            if let Some(p) = psi.get(i - 1) {
                c = c.sub(&p.mul(&chi[s - i])?);
            }
        }
        chi.push(c);
    }
    Ok(chi)
}

fn full_series(psi: &[Matrix], dim: usize, order: usize) -> Vec<Matrix> {
    (0..=order)
        .map(|s| match s {
            0 => Matrix::identity(dim),
            _ => psi.get(s - 1).cloned().unwrap_or_else(|| Matrix::zeros(dim, dim)),
        })
        .collect()
}

fn check_commutes(psi: &[Matrix], alpha: &Matrix, side: &str) -> Result<(), Error> {
    for (i, p) in psi.iter().enumerate() {
        if p.nrows() != alpha.nrows() || p.ncols() != alpha.ncols() {
            return Err(Error::DimensionMismatch(format!("ψ_{{{side},{}}} has the wrong shape", i + 1)));
        }
        if p.mul(alpha)? != alpha.mul(p)? {
            return Err(Error::InvalidMorphism(format!(
                "ψ_{{{side},{}}} does not commute with the twist",
                i + 1
            )));
        }
    }
    Ok(())
}

/// `μ̃_s = Σ_{i+j+k+l=s} ψ_i μ_j(χ_k, χ_l)` for `s = 1..=order`.
fn transport_algebra(d: &FormalDeformation, psi: &[Matrix], chi: &[Matrix], order: usize) -> Result<FormalDeformation, Error> {
    let n = d.base.dim();
    let mut terms = Vec::with_capacity(order);
    for s in 1..=order {
        let mut m = MultilinearMap::zero(2, n, n);
        for j in 0..=s {
            let Some(mu) = d.coeff(j) else { continue };
            for k in 0..=s - j {
                for l in 0..=s - j - k {
                    let i = s - j - k - l;
                    let inner = pullback2(mu, &chi[k], &chi[l]);
                    m.add_scaled(&Rational::one(), &inner.compose_output(&psi[i]));
                }
            }
        }
        terms.push(m);
    }
    FormalDeformation::new(d.base.clone(), terms)
}

/// Transport of an algebra deformation by `ψ_t`, truncated at its order.
pub fn apply_equivalence_algebra(d: &FormalDeformation, psi: &[Matrix]) -> Result<FormalDeformation, Error> {
    check_commutes(psi, &d.base.alpha, "A")?;
    let (n, order) = (d.base.dim(), d.order());
    let chi = series_inverse(psi, n, order)?;
    transport_algebra(d, &full_series(psi, n, order), &chi, order)
}

/// `(ψ_A μ_A(ψ_A^{-1}, ψ_A^{-1}), ψ_B μ_B(ψ_B^{-1}, ψ_B^{-1}), ψ_B φ_t ψ_A^{-1})`
/// truncated at the order of `md`.
pub fn apply_equivalence(
    md: &MorphismDeformation,
    psi: &FormalAutomorphismPair,
) -> Result<MorphismDeformation, Error> {
    check_commutes(&psi.psi_a, &md.phi.source.alpha, "A")?;
    check_commutes(&psi.psi_b, &md.phi.target.alpha, "B")?;
    let order = md.order();
    let (na, nb) = (md.phi.source.dim(), md.phi.target.dim());
    let (pa, pb) = (full_series(&psi.psi_a, na, order), full_series(&psi.psi_b, nb, order));
    let (ca, cb) = (series_inverse(&psi.psi_a, na, order)?, series_inverse(&psi.psi_b, nb, order)?);
    let def_a = transport_algebra(&md.def_a, &pa, &ca, order)?;
    let def_b = transport_algebra(&md.def_b, &pb, &cb, order)?;
    let mut phi_terms = Vec::with_capacity(order);
    for s in 1..=order {
        let mut m = Matrix::zeros(nb, na);
        for j in 0..=s {
            let Some(p) = md.phi_coeff(j) else { continue };
            for k in 0..=s - j {
                m = m.add(&pb[s - j - k].mul(p)?.mul(&ca[k])?);
            }
        }
        phi_terms.push(m);
    }
    MorphismDeformation::new(md.phi.clone(), def_a, def_b, phi_terms)
}

/// The order-`N+1` obstruction, computed from the bracket formulas and
/// cross-checked against the residual `−NL_{N+1}` of the defining equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub order: usize,
    pub cochain: Cochain,
    /// `−NL_{N+1}` computed straight from the deformation equations.
    pub residual: Cochain,
    pub formula_matches_residual: bool,
    pub slot_is_cocycle: Vec<bool>,
    pub slot_trusted: Vec<bool>,
    /// Whether the deformation satisfied its equations through order `N`.
    pub input_valid: bool,
    /// A degree-2 cochain `θ` with `δθ = 𝒪b` when one exists.
    pub primitive: Option<Cochain>,
}

impl Obstruction {
    pub fn is_cocycle(&self) -> bool {
        self.slot_is_cocycle.iter().all(|&b| b)
    }

    pub fn is_coboundary(&self) -> bool {
        self.primitive.is_some()
    }
}

/// `½ Σ_{p+q=s, p,q>0} [μ_p, μ_q]` with the bracket matching the kind.
fn algebra_obstruction(d: &FormalDeformation, s: usize) -> Result<MultilinearMap, Error> {
    let n = d.base.dim();
    let mut out = MultilinearMap::zero(3, n, n);
    let half = frac(1, 2);
    for p in 1..s {
        let (Some(x), Some(y)) = (d.coeff(p), d.coeff(s - p)) else { continue };
        let br = match d.base.kind {
            Kind::Associative => gerstenhaber_bracket(&d.base.alpha, x, y)?,
            Kind::Lie => nr_bracket(&d.base.alpha, x, y)?,
        };
        out.add_scaled(&half, &br);
    }
    Ok(out)
}

/// The `φ` slot of the obstruction, assembled from the composition, cup and
/// triple-index sums (associative) or the primed sums (Lie).
fn phi_obstruction(md: &MorphismDeformation, s: usize) -> Result<MultilinearMap, Error> {
    let (na, nb) = (md.phi.source.dim(), md.phi.target.dim());
    let one = Rational::one();
    let mut out = MultilinearMap::zero(2, na, nb);
    match md.flavor() {
        Flavor::Hom => {
            for p in 1..s {
                let q = s - p;
                if let (Some(m), Some(f)) = (md.def_b.coeff(p), md.phi_coeff(q)) {
                    let f = MultilinearMap::from_matrix(f);
                    out.add_scaled(&one, &overline_comp(&md.phi.matrix, m, &f)?);
                }
                if let (Some(f), Some(m)) = (md.phi_coeff(p), md.def_a.coeff(q)) {
                    out.add_scaled(&-&one, &m.compose_output(f));
                }
                if let (Some(f), Some(g)) = (md.phi_coeff(p), md.phi_coeff(q)) {
                    let (f, g) = (MultilinearMap::from_matrix(f), MultilinearMap::from_matrix(g));
                    out.add_scaled(&one, &cup_product_assoc(&md.phi.target.mul, &f, &g)?);
                }
            }
            for p in 1..s {
                for q in 1..s - p {
                    let k = s - p - q;
                    if let (Some(m), Some(f), Some(g)) = (md.def_b.coeff(p), md.phi_coeff(q), md.phi_coeff(k)) {
                        out.add_scaled(&one, &pullback2(m, f, g));
                    }
                }
            }
        }
        Flavor::Lie => {
            for i in 1..s {
                if let (Some(f), Some(b)) = (md.phi_coeff(i), md.def_a.coeff(s - i)) {
                    out.add_scaled(&one, &b.compose_output(f));
                }
            }
            for k in 0..s {
                for i in 0..=s - k {
                    let j = s - k - i;
                    if i == s || j == s {
                        continue;
                    }
                    if let (Some(b), Some(f), Some(g)) = (md.def_b.coeff(k), md.phi_coeff(i), md.phi_coeff(j)) {
                        out.add_scaled(&-&one, &pullback2(b, f, g));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Solve `δ c = target` inside the degree-`n` cochain space.
fn primitive(spec: &ComplexSpec, n: usize, target: &Cochain) -> Result<Option<Cochain>, Error> {
    let space = spec.space(n)?;
    let basis = space.basis();
    let images = basis.iter().map(|c| Ok(spec.delta(c)?.to_ambient())).collect::<Result<Vec<_>, Error>>()?;
    let rhs = target.to_ambient();
    if images.is_empty() {
        return Ok(is_zero_vec(&rhs).then(|| space.element(&[])));
    }
    let m = Matrix::from_columns(rhs.len(), &images)?;
    Ok(solve(&m, &rhs)?.map(|x| space.element(&x)))
}

fn finish(
    spec: &ComplexSpec,
    order: usize,
    cochain: Cochain,
    residual: Cochain,
    slot_trusted: Vec<bool>,
    input_valid: bool,
) -> Result<Obstruction, Error> {
    let delta = spec.delta(&cochain)?;
    let primitive = primitive(spec, 2, &cochain)?;
    Ok(Obstruction {
        order,
        formula_matches_residual: cochain == residual,
        slot_is_cocycle: slots(&delta),
        slot_trusted,
        input_valid,
        primitive,
        residual,
        cochain,
    })
}

/// Obstruction to extending an algebra deformation of order `N` to `N+1`.
pub fn obstruction_algebra(d: &FormalDeformation) -> Result<Obstruction, Error> {
    let s = d.order() + 1;
    let formula = algebra_obstruction(d, s)?;
    let residual = algebra_sum(d, s, true)?.neg();
    let input_valid = check_algebra_deformation(d, Some(d.order()))?.ok();
    finish(
        &ComplexSpec::for_algebra(&d.base),
        s,
        Cochain::Single(formula),
        Cochain::Single(residual),
        vec![d.base.is_valid()],
        input_valid,
    )
}

/// Obstruction `(𝒪b_A, 𝒪b_B, 𝒪b_φ)` to extending a morphism deformation.
pub fn obstruction(md: &MorphismDeformation) -> Result<Obstruction, Error> {
    let s = md.order() + 1;
    let md = md.padded(md.order());
    let formula = MorphismCochain {
        comp_a: algebra_obstruction(&md.def_a, s)?,
        comp_b: algebra_obstruction(&md.def_b, s)?,
        comp_ab: phi_obstruction(&md, s)?,
    };
    let residual = MorphismCochain {
        comp_a: algebra_sum(&md.def_a, s, true)?.neg(),
        comp_b: algebra_sum(&md.def_b, s, true)?.neg(),
        comp_ab: morphism_sum(&md, s, true).neg(),
    };
    let input_valid = check_morphism_deformation(&md, Some(md.order()))?.ok();
    finish(
        &ComplexSpec::for_morphism(&md.phi),
        s,
        Cochain::Triple(formula),
        Cochain::Triple(residual),
        morphism_trust(&md.phi),
        input_valid,
    )
}

/// Outcome of an extension attempt at order `N+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension<T> {
    Extended { deformation: T, report: DeformationReport },
    Obstructed { order: usize, obstruction: Obstruction },
}

/// Add `t^{N+1} θ` with `δθ = 𝒪b`, or report the obstruction.
pub fn extend_algebra_deformation(d: &FormalDeformation) -> Result<Extension<FormalDeformation>, Error> {
    let ob = obstruction_algebra(d)?;
    let Some(Cochain::Single(theta)) = ob.primitive.clone() else {
        return Ok(Extension::Obstructed { order: ob.order, obstruction: ob });
    };
    let mut out = d.clone();
    out.terms.push(theta);
    let report = check_algebra_deformation(&out, Some(ob.order))?;
    Ok(Extension::Extended { deformation: out, report })
}

/// Morphism version of [`extend_algebra_deformation`].
pub fn extend_deformation(md: &MorphismDeformation) -> Result<Extension<MorphismDeformation>, Error> {
    let ob = obstruction(md)?;
    let Some(Cochain::Triple(theta)) = ob.primitive.clone() else {
        return Ok(Extension::Obstructed { order: ob.order, obstruction: ob });
    };
    let mut out = md.padded(md.order());
    out.def_a.terms.push(theta.comp_a);
    out.def_b.terms.push(theta.comp_b);
    out.phi_terms.push(theta.comp_ab.to_matrix());
    let report = check_morphism_deformation(&out, Some(ob.order))?;
    Ok(Extension::Extended { deformation: out, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;

    fn skew_term(n: usize, i: usize, j: usize, k: usize, c: i64) -> MultilinearMap {
        let mut m = MultilinearMap::zero(2, n, n);
        let mut v = vec![rat(0); n];
        v[k] = rat(c);
        m.set(&[i, j], &v);
        v[k] = rat(-c);
        m.set(&[j, i], &v);
        m
    }

    #[test]
    fn trivial_deformations_are_ok() {
        let d = FormalDeformation::trivial(fixtures::a3(rat(1), rat(2)));
        assert!(check_algebra_deformation(&d, Some(3)).unwrap().ok());
        let md = MorphismDeformation::trivial(fixtures::phi_a3_b2());
        assert!(check_morphism_deformation(&md, Some(2)).unwrap().ok());
        let ob = obstruction(&md).unwrap();
        assert!(ob.cochain.is_zero() && ob.is_cocycle() && ob.formula_matches_residual);
        match extend_deformation(&md).unwrap() {
            Extension::Extended { deformation, report } => {
                assert!(report.ok());
                assert!(deformation.theta(1).is_zero());
            }
            Extension::Obstructed { .. } => panic!("trivial deformation must extend"),
        }
    }

    #[test]
    fn def_g1_is_ok_at_all_orders() {
        let d = fixtures::def_g1(rat(1));
        let report = check_algebra_deformation(&d, None).unwrap();
        assert_eq!(report.up_to, 2);
        assert!(report.ok());
    }

    #[test]
    fn skewness_violation_is_reported() {
        let base = fixtures::g1(rat(2), rat(3));
        let mut mu1 = MultilinearMap::zero(2, 3, 3);
        mu1.set(&[0, 1], &[rat(0), rat(0), rat(1)]);
        let d = FormalDeformation::new(base, vec![mu1]).unwrap();
        let report = check_algebra_deformation(&d, None).unwrap();
        assert!(!report.ok());
        let w = &report.orders[1].witnesses[0];
        assert_eq!((w.check, w.args.clone()), (DeformationCheck::SourceSkew, vec![0, 1]));
    }

    #[test]
    fn mdef_2_source_morphism_and_twist_pass() {
        let md = fixtures::mdef_2(false);
        let report = check_morphism_deformation(&md, None).unwrap();
        assert!(report.source_ok());
        assert!(report.morphism_ok());
        assert!(report.twist_ok());
    }

    #[test]
    fn corrupt_phi_breaks_twist_at_e1() {
        let report = check_morphism_deformation(&fixtures::mdef_2(true), None).unwrap();
        assert!(!report.twist_ok());
        let w = report
            .orders
            .iter()
            .flat_map(|r| &r.witnesses)
            .find(|w| w.check == DeformationCheck::TwistEquation)
            .unwrap();
        assert_eq!(w.args, vec![0]);
    }

    #[test]
    fn infinitesimal_of_mdef_2() {
        let inf = infinitesimal(&fixtures::mdef_2(false)).unwrap();
        assert_eq!(inf.order, 1);
        assert!(inf.slot_is_cocycle[0]);
        assert!(inf.slot_is_cocycle[2]);
        let padded = infinitesimal(&fixtures::mdef_2(false).shifted(1)).unwrap();
        assert_eq!(padded.order, 2);
        assert_eq!(padded.theta, inf.theta);
    }

    #[test]
    fn defect_splits_into_linear_and_nonlinear_parts() {
        // order-2 family on A3 with arbitrary compatible coefficients
        let a = fixtures::a3(rat(1), rat(1));
        let space = crate::cochain::hom_cochain_basis(&a, 3, &a.alpha, 2).unwrap();
        let m1 = space.element(&(0..space.dim()).map(|i| rat(i as i64 % 3 - 1)).collect::<Vec<_>>());
        let m2 = space.element(&(0..space.dim()).map(|i| rat((i as i64 * 5) % 4)).collect::<Vec<_>>());
        let d = FormalDeformation::new(a.clone(), vec![m1, m2.clone()]).unwrap();
        let total = algebra_sum(&d, 2, false).unwrap();
        let lin = crate::cohomology::delta_hom_self(&a, &m2).unwrap();
        assert_eq!(total, lin.add(&algebra_sum(&d, 2, true).unwrap()));
    }

    #[test]
    fn lie_obstruction_formula_matches_residual() {
        let base = fixtures::heisenberg();
        let d = FormalDeformation::new(base, vec![skew_term(3, 0, 2, 1, 1)]).unwrap();
        let ob = obstruction_algebra(&d).unwrap();
        assert!(ob.formula_matches_residual);
        assert!(ob.is_cocycle());
        let ob = obstruction_algebra(&fixtures::def_g1(rat(1))).unwrap();
        assert!(ob.formula_matches_residual && ob.is_cocycle());
    }

    #[test]
    fn assoc_obstruction_formula_matches_residual_and_a3_extends() {
        let a = fixtures::a3(rat(1), rat(2));
        let spec = ComplexSpec::for_algebra(&a);
        let summary = crate::cohomology::compute_cohomology(&spec, 2..=2).unwrap();
        let z = &summary.degree(2).unwrap().cocycle_basis;
        assert!(!z.is_empty());
        let Cochain::Single(mu1) = z.iter().fold(Cochain::Single(MultilinearMap::zero(2, 3, 3)), |acc, c| {
            Cochain::Single(acc.as_single().unwrap().add(c.as_single().unwrap()))
        }) else {
            unreachable!()
        };
        let d = FormalDeformation::new(a, vec![mu1]).unwrap();
        let ob = obstruction_algebra(&d).unwrap();
        assert!(ob.formula_matches_residual);
        assert!(ob.is_cocycle() && ob.is_coboundary());
        match extend_algebra_deformation(&d).unwrap() {
            Extension::Extended { report, deformation } => {
                assert!(report.ok());
                assert_eq!(deformation.order(), 2);
            }
            Extension::Obstructed { .. } => panic!("rigid algebra must extend"),
        }
    }

    #[test]
    fn series_inverse_is_inverse() {
        let psi = vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::from_i64(&[&[1, 2], &[3, 4]])];
        let chi = series_inverse(&psi, 2, 4).unwrap();
        let full = full_series(&psi, 2, 4);
        for s in 0..=4 {
            let mut acc = Matrix::zeros(2, 2);
            for i in 0..=s {
                acc = acc.add(&full[i].mul(&chi[s - i]).unwrap());
            }
            let expect = if s == 0 { Matrix::identity(2) } else { Matrix::zeros(2, 2) };
            assert_eq!(acc, expect);
        }
    }

    #[test]
    fn equivalence_identity_is_noop_and_shift_is_coboundary() {
        let md = fixtures::mdef_2(false);
        assert_eq!(apply_equivalence(&md, &FormalAutomorphismPair::identity()).unwrap(), md);
        // e3 ↦ e2 commutes with diag(2, 0, 0)
        let nil = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let pair = FormalAutomorphismPair { psi_a: vec![nil.clone()], psi_b: Vec::new() };
        let out = apply_equivalence(&md, &pair).unwrap();
        let before = check_morphism_deformation(&md, Some(1)).unwrap();
        let after = check_morphism_deformation(&out, Some(1)).unwrap();
        assert_eq!(before.source_ok(), after.source_ok());
        assert_eq!(before.morphism_ok(), after.morphism_ok());
        assert_eq!(before.twist_ok(), after.twist_ok());
        let mut generator = MorphismCochain::zero(&md.phi, 1);
        generator.comp_a = MultilinearMap::from_matrix(&nil);
        let shift = crate::cohomology::delta_morphism(&md.phi, &generator, Flavor::Lie).unwrap();
        assert_eq!(md.theta(1).sub(&out.theta(1)), shift);
    }

    #[test]
    fn non_commuting_psi_is_rejected() {
        let md = fixtures::mdef_2(false);
        let bad = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let pair = FormalAutomorphismPair { psi_a: vec![bad], psi_b: Vec::new() };
        assert!(matches!(apply_equivalence(&md, &pair), Err(Error::InvalidMorphism(_))));
    }
}

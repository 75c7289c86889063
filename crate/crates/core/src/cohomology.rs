//! Coboundary operators of the associative and Lie flavors, with module
//! coefficients and for morphisms, and their cohomology.
//!
//! Operators are defined from degree 1 up: an arity-`n` cochain maps to an
//! arity-`n + 1` cochain and `α^{n−1}` twists the outer terms. `B¹ = 0`, and
//! the morphism complexes drop the `δ⁰` term at degree 1.

use std::ops::RangeInclusive;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{HomAlgebra, Kind};
use crate::cochain::{
    cochain_space, morphism_cochain_space, CochainSpace, Flavor, MorphismCochain,
    MorphismCochainSpace,
};
use crate::error::Error;
use crate::exact::{independent_columns, nullspace_basis, rank_of, Matrix, Rational};
use crate::multilinear::MultilinearMap;
use crate::rep::{Bimodule, HomMorphism, LieModule};

pub(crate) fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub(crate) fn columns(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.ncols()).map(|j| m.column(j)).collect()
}

fn check_degree(f: &MultilinearMap) -> Result<(), Error> {
    if f.arity() == 0 {
        return Err(Error::Unsupported("coboundary operators start in degree 1".into()));
    }
    Ok(())
}

fn check_bimodule(a: &HomAlgebra, m: &Bimodule, f: &MultilinearMap) -> Result<(), Error> {
    check_degree(f)?;
    let n = a.dim();
    if f.source_dim() != n
        || f.target_dim() != m.carrier_dim
        || m.left.len() != n
        || m.right.len() != n
    {
        return Err(Error::DimensionMismatch(format!(
            "cochain {}→{} against algebra of dim {n} and module of dim {}",
            f.source_dim(),
            f.target_dim(),
            m.carrier_dim
        )));
    }
    Ok(())
}

/// `f(α x_0, ..., μ(x_i, x_{i+1}), ..., α x_n)` on a basis tuple.
pub(crate) fn inner_term(
    a: &HomAlgebra,
    alpha_cols: &[Vec<Rational>],
    f: &MultilinearMap,
    t: &[usize],
    i: usize,
) -> Vec<Rational> {
    let mut args: Vec<&[Rational]> = Vec::with_capacity(f.arity());
    args.extend(t[..i].iter().map(|&j| alpha_cols[j].as_slice()));
    args.push(a.product(t[i], t[i + 1]));
    args.extend(t[i + 2..].iter().map(|&j| alpha_cols[j].as_slice()));
    f.eval(&args)
}

/// Coboundary with values in a bimodule:
/// `ρ_l(α^{n−1}x_0, f(x_1..x_n)) + Σ_k (−1)^k f(.., μ(x_{k−1}, x_k), ..)
///  + (−1)^{n+1} ρ_r(f(x_0..x_{n−1}), α^{n−1}x_n)`, bystanders twisted by `α`.
pub fn delta_hom_bimodule(
    a: &HomAlgebra,
    m: &Bimodule,
    f: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    check_bimodule(a, m, f)?;
    let n = f.arity();
    let alpha_cols = columns(&a.alpha);
    let power_cols = columns(&a.alpha_power(n - 1));
    let last = sign(n + 1);
    Ok(MultilinearMap::from_fn(n + 1, a.dim(), m.carrier_dim, |t| {
        let mut out = m.act_left(&power_cols[t[0]], f.value(&t[1..]));
        for i in 0..n {
            let term = inner_term(a, &alpha_cols, f, t, i);
            let s = sign(i + 1);
            for (o, x) in out.iter_mut().zip(term) {
                *o += &s * x;
            }
        }
        let right = m.act_right(f.value(&t[..n]), &power_cols[t[n]]);
        for (o, x) in out.iter_mut().zip(right) {
            *o += &last * x;
        }
        out
    }))
}

/// The Hochschild-type coboundary of `A` with coefficients in itself.
pub fn delta_hom_self(a: &HomAlgebra, f: &MultilinearMap) -> Result<MultilinearMap, Error> {
    delta_hom_bimodule(a, &Bimodule::regular(a), f)
}

/// The face operator `D_i` on arity-`n` cochains; `δ = Σ_{i=0}^{n} (−1)^{i+1} D_i`.
/// `D_0` carries the left action and `D_{n−1}` the right action (both when
/// `n = 1`); `D_n = 0`.
pub fn d_component(
    a: &HomAlgebra,
    m: &Bimodule,
    i: usize,
    f: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    check_bimodule(a, m, f)?;
    let n = f.arity();
    if i > n {
        return Err(Error::DimensionMismatch(format!("face index {i} exceeds degree {n}")));
    }
    if i == n {
        return Ok(MultilinearMap::zero(n + 1, a.dim(), m.carrier_dim));
    }
    let alpha_cols = columns(&a.alpha);
    let power_cols = columns(&a.alpha_power(n - 1));
    Ok(MultilinearMap::from_fn(n + 1, a.dim(), m.carrier_dim, |t| {
        let mut out = inner_term(a, &alpha_cols, f, t, i);
        if i == 0 {
            let left = m.act_left(&power_cols[t[0]], f.value(&t[1..]));
            for (o, x) in out.iter_mut().zip(left) {
                *o -= x;
            }
        }
        if i == n - 1 {
            let right = m.act_right(f.value(&t[..n]), &power_cols[t[n]]);
            for (o, x) in out.iter_mut().zip(right) {
                *o -= x;
            }
        }
        out
    }))
}

fn check_lie(l: &HomAlgebra, pi: &LieModule, f: &MultilinearMap) -> Result<(), Error> {
    check_degree(f)?;
    if f.source_dim() != l.dim() || f.target_dim() != pi.carrier_dim || pi.action.len() != l.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cochain {}→{} against Lie algebra of dim {} and module of dim {}",
            f.source_dim(),
            f.target_dim(),
            l.dim(),
            pi.carrier_dim
        )));
    }
    if !f.is_alternating() {
        return Err(Error::NonAlternating);
    }
    Ok(())
}

/// Chevalley–Eilenberg-type coboundary with values in a Lie module:
/// `Σ_i (−1)^i [α^{n−1}x_i, f(.., x̂_i, ..)]_V
///  + Σ_{i<j} (−1)^{i+j} f([x_i, x_j], α x_0, .., x̂_i, .., x̂_j, .., α x_n)`.
pub fn delta_lie_module(
    l: &HomAlgebra,
    pi: &LieModule,
    f: &MultilinearMap,
) -> Result<MultilinearMap, Error> {
    check_lie(l, pi, f)?;
    let n = f.arity();
    let alpha_cols = columns(&l.alpha);
    let power_cols = columns(&l.alpha_power(n - 1));
    let mut rest = Vec::with_capacity(n);
    let mut args: Vec<&[Rational]> = Vec::with_capacity(n);
    Ok(MultilinearMap::from_fn(n + 1, l.dim(), pi.carrier_dim, |t| {
        let mut out = vec![Rational::zero(); pi.carrier_dim];
        for i in 0..=n {
            rest.clear();
            rest.extend(t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x));
            let term = pi.act(&power_cols[t[i]], f.value(&rest));
            let s = sign(i);
            for (o, x) in out.iter_mut().zip(term) {
                *o += &s * x;
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                args.clear();
                args.push(l.product(t[i], t[j]));
                for (k, &x) in t.iter().enumerate() {
                    if k != i && k != j {
                        args.push(&alpha_cols[x]);
                    }
                }
                let term = f.eval(&args);
                let s = sign(i + j);
                for (o, x) in out.iter_mut().zip(term) {
                    *o += &s * x;
                }
            }
        }
        out
    }))
}

/// The Chevalley–Eilenberg-type coboundary of `L` with coefficients in itself.
pub fn delta_lie_self(l: &HomAlgebra, f: &MultilinearMap) -> Result<MultilinearMap, Error> {
    delta_lie_module(l, &LieModule::regular(l), f)
}

/// Coboundary of the morphism complex.
///
/// Associative: `(δφ₁, δφ₂, φ∘φ₁ − φ₂∘φ^{⊗n} − δφ₃)`.
/// Lie: `(δφ₁, δφ₂, δφ₃ + (−1)^{n−1}(φ∘φ₁ − φ₂⋄φ))`.
/// The third slot differentiates with values in the target via `φ`; it is
/// dropped at `n = 1`.
pub fn delta_morphism(
    phi: &HomMorphism,
    c: &MorphismCochain,
    flavor: Flavor,
) -> Result<MorphismCochain, Error> {
    let n = c.degree();
    let (a, b) = (&phi.source, &phi.target);
    if c.comp_b.arity() != n || c.comp_ab.arity() + 1 != n {
        return Err(Error::DimensionMismatch("morphism cochain arities are inconsistent".into()));
    }
    let pushed = c.comp_a.compose_output(&phi.matrix);
    let pulled = c.comp_b.compose_inputs(&phi.matrix);
    let cross = pushed.sub(&pulled);
    match flavor {
        Flavor::Hom => {
            let mut third = cross;
            if n > 1 {
                third = third.sub(&delta_hom_bimodule(a, &Bimodule::adjoint_via(phi), &c.comp_ab)?);
            }
            Ok(MorphismCochain {
                comp_a: delta_hom_self(a, &c.comp_a)?,
                comp_b: delta_hom_self(b, &c.comp_b)?,
                comp_ab: third,
            })
        }
        Flavor::Lie => {
            let mut third = cross.scale(&sign(n - 1));
            if n > 1 {
                third = third.add(&delta_lie_module(a, &LieModule::adjoint_via(phi), &c.comp_ab)?);
            }
            Ok(MorphismCochain {
                comp_a: delta_lie_self(a, &c.comp_a)?,
                comp_b: delta_lie_self(b, &c.comp_b)?,
                comp_ab: third,
            })
        }
    }
}

/// A cochain of any of the complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain {
    Single(MultilinearMap),
    Triple(MorphismCochain),
}

impl Cochain {
    pub fn to_ambient(&self) -> Vec<Rational> {
        match self {
            Cochain::Single(f) => f.coeffs().to_vec(),
            Cochain::Triple(c) => c.to_ambient(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Cochain::Single(f) => f.is_zero(),
            Cochain::Triple(c) => c.is_zero(),
        }
    }

    pub fn as_single(&self) -> Option<&MultilinearMap> {
        match self {
            Cochain::Single(f) => Some(f),
            Cochain::Triple(_) => None,
        }
    }

    pub fn as_triple(&self) -> Option<&MorphismCochain> {
        match self {
            Cochain::Single(_) => None,
            Cochain::Triple(c) => Some(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Single(CochainSpace),
    Triple(MorphismCochainSpace),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Single(s) => s.dim(),
            Space::Triple(s) => s.dim(),
        }
    }

    pub fn basis(&self) -> Vec<Cochain> {
        match self {
            Space::Single(s) => s.basis.iter().cloned().map(Cochain::Single).collect(),
            Space::Triple(s) => s.basis().into_iter().map(Cochain::Triple).collect(),
        }
    }

    pub fn coordinates(&self, c: &Cochain) -> Option<Vec<Rational>> {
        match (self, c) {
            (Space::Single(s), Cochain::Single(f)) => s.coordinates(f),
            (Space::Triple(s), Cochain::Triple(t)) => s.coordinates(t),
            _ => None,
        }
    }

    pub fn element(&self, coords: &[Rational]) -> Cochain {
        match self {
            Space::Single(s) => Cochain::Single(s.element(coords)),
            Space::Triple(s) => Cochain::Triple(s.element(coords)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexFlavor {
    HomSelf,
    HomBimodule,
    LieSelf,
    LieModule,
    MorphismHom,
    MorphismLie,
}

/// Which complex to differentiate.
#[derive(Clone, Debug)]
pub enum ComplexSpec {
    HomSelf(HomAlgebra),
    HomBimodule(HomAlgebra, Bimodule),
    LieSelf(HomAlgebra),
    LieModule(HomAlgebra, LieModule),
    MorphismHom(HomMorphism),
    MorphismLie(HomMorphism),
}

impl ComplexSpec {
    /// The self complex matching the algebra's kind.
    pub fn for_algebra(a: &HomAlgebra) -> Self {
        match a.kind {
            Kind::Associative => ComplexSpec::HomSelf(a.clone()),
            Kind::Lie => ComplexSpec::LieSelf(a.clone()),
        }
    }

    /// The morphism complex matching the source's kind.
    pub fn for_morphism(phi: &HomMorphism) -> Self {
        match phi.source.kind {
            Kind::Associative => ComplexSpec::MorphismHom(phi.clone()),
            Kind::Lie => ComplexSpec::MorphismLie(phi.clone()),
        }
    }

    /// Coefficients in the target of `φ`, acted on through `φ`.
    pub fn with_values_in(phi: &HomMorphism) -> Self {
        match phi.source.kind {
            Kind::Associative => {
                ComplexSpec::HomBimodule(phi.source.clone(), Bimodule::adjoint_via(phi))
            }
            Kind::Lie => ComplexSpec::LieModule(phi.source.clone(), LieModule::adjoint_via(phi)),
        }
    }

    pub fn flavor(&self) -> ComplexFlavor {
        match self {
            ComplexSpec::HomSelf(_) => ComplexFlavor::HomSelf,
            ComplexSpec::HomBimodule(..) => ComplexFlavor::HomBimodule,
            ComplexSpec::LieSelf(_) => ComplexFlavor::LieSelf,
            ComplexSpec::LieModule(..) => ComplexFlavor::LieModule,
            ComplexSpec::MorphismHom(_) => ComplexFlavor::MorphismHom,
            ComplexSpec::MorphismLie(_) => ComplexFlavor::MorphismLie,
        }
    }

    pub fn space(&self, n: usize) -> Result<Space, Error> {
        Ok(match self {
            ComplexSpec::HomSelf(a) => {
                Space::Single(cochain_space(&a.alpha, a.dim(), &a.alpha, n, Flavor::Hom)?)
            }
            ComplexSpec::HomBimodule(a, m) => {
                Space::Single(cochain_space(&a.alpha, m.carrier_dim, &m.beta, n, Flavor::Hom)?)
            }
            ComplexSpec::LieSelf(l) => {
                Space::Single(cochain_space(&l.alpha, l.dim(), &l.alpha, n, Flavor::Lie)?)
            }
            ComplexSpec::LieModule(l, pi) => {
                Space::Single(cochain_space(&l.alpha, pi.carrier_dim, &pi.beta, n, Flavor::Lie)?)
            }
            ComplexSpec::MorphismHom(phi) => {
                Space::Triple(morphism_cochain_space(phi, n, Flavor::Hom)?)
            }
            ComplexSpec::MorphismLie(phi) => {
                Space::Triple(morphism_cochain_space(phi, n, Flavor::Lie)?)
            }
        })
    }

    /// Degree-`n` cochains without the compatibility constraint.
    pub fn unconstrained_space(&self, n: usize) -> Result<Space, Error> {
        let free = |src: usize, tgt: usize, n: usize, flavor: Flavor| {
            cochain_space(&Matrix::zeros(src, src), tgt, &Matrix::zeros(tgt, tgt), n, flavor)
        };
        Ok(match self {
            ComplexSpec::HomSelf(a) => Space::Single(free(a.dim(), a.dim(), n, Flavor::Hom)?),
            ComplexSpec::HomBimodule(a, m) => Space::Single(free(a.dim(), m.carrier_dim, n, Flavor::Hom)?),
            ComplexSpec::LieSelf(l) => Space::Single(free(l.dim(), l.dim(), n, Flavor::Lie)?),
            ComplexSpec::LieModule(l, pi) => Space::Single(free(l.dim(), pi.carrier_dim, n, Flavor::Lie)?),
            ComplexSpec::MorphismHom(phi) | ComplexSpec::MorphismLie(phi) => {
                let flavor = if matches!(self, ComplexSpec::MorphismHom(_)) { Flavor::Hom } else { Flavor::Lie };
                if n == 0 {
                    return Err(Error::Unsupported("morphism cochains start in degree 1".into()));
                }
                let (na, nb) = (phi.source.dim(), phi.target.dim());
                Space::Triple(MorphismCochainSpace {
                    degree: n,
                    flavor,
                    space_a: free(na, na, n, flavor)?,
                    space_b: free(nb, nb, n, flavor)?,
                    space_ab: free(na, nb, n - 1, flavor)?,
                })
            }
        })
    }

    pub fn delta(&self, c: &Cochain) -> Result<Cochain, Error> {
        let mismatch = || Error::DimensionMismatch("cochain does not belong to this complex".into());
        Ok(match self {
            ComplexSpec::HomSelf(a) => Cochain::Single(delta_hom_self(a, c.as_single().ok_or_else(mismatch)?)?),
            ComplexSpec::HomBimodule(a, m) => {
                Cochain::Single(delta_hom_bimodule(a, m, c.as_single().ok_or_else(mismatch)?)?)
            }
            ComplexSpec::LieSelf(l) => Cochain::Single(delta_lie_self(l, c.as_single().ok_or_else(mismatch)?)?),
            ComplexSpec::LieModule(l, pi) => {
                Cochain::Single(delta_lie_module(l, pi, c.as_single().ok_or_else(mismatch)?)?)
            }
            ComplexSpec::MorphismHom(phi) => Cochain::Triple(delta_morphism(
                phi,
                c.as_triple().ok_or_else(mismatch)?,
                Flavor::Hom,
            )?),
            ComplexSpec::MorphismLie(phi) => Cochain::Triple(delta_morphism(
                phi,
                c.as_triple().ok_or_else(mismatch)?,
                Flavor::Lie,
            )?),
        })
    }

    /// Whether `c` satisfies the compatibility (and alternation) constraints
    /// of its arity, checked directly without building the space.
    pub fn admits(&self, c: &Cochain) -> bool {
        let lie = matches!(
            self,
            ComplexSpec::LieSelf(_) | ComplexSpec::LieModule(..) | ComplexSpec::MorphismLie(_)
        );
        let ok = |f: &MultilinearMap, alpha: &Matrix, beta: &Matrix| {
            f.is_compatible(alpha, beta) && (!lie || f.is_alternating())
        };
        match (self, c) {
            (ComplexSpec::HomSelf(a) | ComplexSpec::LieSelf(a), Cochain::Single(f)) => {
                ok(f, &a.alpha, &a.alpha)
            }
            (ComplexSpec::HomBimodule(a, m), Cochain::Single(f)) => ok(f, &a.alpha, &m.beta),
            (ComplexSpec::LieModule(l, pi), Cochain::Single(f)) => ok(f, &l.alpha, &pi.beta),
            (ComplexSpec::MorphismHom(phi) | ComplexSpec::MorphismLie(phi), Cochain::Triple(t)) => {
                let (a, b) = (&phi.source.alpha, &phi.target.alpha);
                ok(&t.comp_a, a, a) && ok(&t.comp_b, b, b) && ok(&t.comp_ab, a, b)
            }
            _ => false,
        }
    }

    /// Axiom failures of the underlying data; nonempty means results are best effort.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut algebra = |a: &HomAlgebra, expected: Kind| {
            if a.kind != expected {
                out.push(format!("{} has kind {} but the complex expects {expected}", a.name, a.kind));
            }
            let r = a.validate();
            if let Some(w) = r.witness {
                out.push(format!("{} fails {} on {:?}", a.name, w.axiom, w.args));
            }
            if let Some(w) = r.multiplicative_witness {
                out.push(format!("{} is not multiplicative: {} on {:?}", a.name, w.axiom, w.args));
            }
        };
        match self {
            ComplexSpec::HomSelf(a) => algebra(a, Kind::Associative),
            ComplexSpec::LieSelf(l) => algebra(l, Kind::Lie),
            ComplexSpec::HomBimodule(a, _) => algebra(a, Kind::Associative),
            ComplexSpec::LieModule(l, _) => algebra(l, Kind::Lie),
            ComplexSpec::MorphismHom(phi) => {
                algebra(&phi.source, Kind::Associative);
                algebra(&phi.target, Kind::Associative);
            }
            ComplexSpec::MorphismLie(phi) => {
                algebra(&phi.source, Kind::Lie);
                algebra(&phi.target, Kind::Lie);
            }
        }
        match self {
            ComplexSpec::HomBimodule(a, m) => match m.check(a) {
                Ok(r) => {
                    if let Some(w) = r.witness {
                        out.push(format!("bimodule fails {} on {:?}", w.axiom, w.args));
                    }
                }
                Err(e) => out.push(e.to_string()),
            },
            ComplexSpec::LieModule(l, pi) => match pi.check(l) {
                Ok(r) => {
                    if let Some(w) = r.witness {
                        out.push(format!("module fails {} on {:?}", w.axiom, w.args));
                    }
                }
                Err(e) => out.push(e.to_string()),
            },
            ComplexSpec::MorphismHom(phi) | ComplexSpec::MorphismLie(phi) => {
                if let Some(w) = phi.check().witness {
                    out.push(format!("morphism fails {} on {:?}", w.axiom, w.args));
                }
            }
            _ => {}
        }
        out
    }

    pub fn differential_matrix(&self, n: usize) -> Result<Matrix, Error> {
        differential_matrix(&self.space(n)?, &self.space(n + 1)?, |c| self.delta(c))
    }
}

/// Column `j` holds the coordinates of `δ(basis_j)` in the codomain basis.
pub fn differential_matrix<F>(space_n: &Space, space_n1: &Space, delta: F) -> Result<Matrix, Error>
where
    F: Fn(&Cochain) -> Result<Cochain, Error>,
{
    let mut cols = Vec::with_capacity(space_n.dim());
    for (j, b) in space_n.basis().iter().enumerate() {
        let image = delta(b)?;
        cols.push(space_n1.coordinates(&image).ok_or(Error::ImageOutsideCodomain(j))?);
    }
    if cols.is_empty() {
        return Ok(Matrix::zeros(space_n1.dim(), 0));
    }
    Matrix::from_columns(space_n1.dim(), &cols)
}

/// `δ^{n+1}∘δ^n` evaluated directly on every basis cochain of degree `n`;
/// returns the index of the first basis element where it is nonzero.
pub fn square_zero_witness(spec: &ComplexSpec, n: usize) -> Result<Option<usize>, Error> {
    for (j, b) in spec.space(n)?.basis().iter().enumerate() {
        if !spec.delta(&spec.delta(b)?)?.is_zero() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Where cocycles are looked for.
///
/// `Unconstrained` drops the twist-compatibility condition on degree-`n`
/// cocycles (alternation is kept for the Lie flavor) while coboundaries still
/// come from compatible cochains. Some hand computations in the literature
/// count cocycles this way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleConvention {
    #[default]
    Compatible,
    Unconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub n: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub cocycle_basis: Vec<Cochain>,
    pub representatives: Vec<Cochain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSummary {
    pub flavor: ComplexFlavor,
    pub convention: CocycleConvention,
    pub degrees: Vec<DegreeRecord>,
    pub warnings: Vec<String>,
}

impl ComplexSummary {
    pub fn degree(&self, n: usize) -> Option<&DegreeRecord> {
        self.degrees.iter().find(|d| d.n == n)
    }
}

/// Basis of `span(us) ∩ span(vs)` in ambient coordinates.
fn intersection(us: &[Vec<Rational>], vs: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if us.is_empty() || vs.is_empty() {
        return Vec::new();
    }
    let mut cols = us.to_vec();
    cols.extend(vs.iter().cloned());
    let m = Matrix::from_columns(len, &cols).expect("equal lengths");
    nullspace_basis(&m)
        .iter()
        .map(|k| {
            let mut v = vec![Rational::zero(); len];
            for (c, u) in k.iter().zip(us) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(u) {
                    *x += c * y;
                }
            }
            v
        })
        .collect()
}

/// `Z^n`, `B^n` and `H^n = Z^n / B^n` for each degree in range (starting at 1).
///
/// Cocycles are the kernel of `δ^n` computed in ambient tensor coordinates,
/// so no basis of the degree-`n + 1` space is needed. Coboundaries are
/// intersected with the cocycles, which is a no-op when `δ² = 0`; when it is
/// not (invalid input), the failure is recorded among the warnings.
pub fn compute_cohomology(
    spec: &ComplexSpec,
    degrees: RangeInclusive<usize>,
) -> Result<ComplexSummary, Error> {
    compute_cohomology_with(spec, degrees, CocycleConvention::Compatible)
}

/// As [`compute_cohomology`], with the cocycle space chosen by `convention`.
/// Coboundaries always come from compatible cochains of the previous degree.
pub fn compute_cohomology_with(
    spec: &ComplexSpec,
    degrees: RangeInclusive<usize>,
    convention: CocycleConvention,
) -> Result<ComplexSummary, Error> {
    if *degrees.start() == 0 {
        return Err(Error::Unsupported("cohomology is computed from degree 1".into()));
    }
    let mut warnings = spec.warnings();
    let mut records = Vec::new();
    let mut prev: Option<Space> = if *degrees.start() > 1 {
        Some(spec.space(degrees.start() - 1)?)
    } else {
        None
    };
    for n in degrees {
        let compatible = spec.space(n)?;
        let space = match convention {
            CocycleConvention::Compatible => compatible.clone(),
            CocycleConvention::Unconstrained => spec.unconstrained_space(n)?,
        };
        let basis = space.basis();
        let mut images = Vec::with_capacity(basis.len());
        let mut outside = false;
        for b in &basis {
            let image = spec.delta(b)?;
            outside |= convention == CocycleConvention::Compatible && !spec.admits(&image);
            images.push(image.to_ambient());
        }
        if outside {
            warnings.push(format!("δ^{n} maps some cochains outside the degree-{} cochain space", n + 1));
        }
        let z_coords: Vec<Vec<Rational>> = if basis.is_empty() {
            Vec::new()
        } else {
            let len = images[0].len();
            nullspace_basis(&Matrix::from_columns(len, &images)?)
        };
        let cocycle_basis: Vec<Cochain> = z_coords.iter().map(|c| space.element(c)).collect();
        let z_ambient: Vec<Vec<Rational>> = cocycle_basis.iter().map(Cochain::to_ambient).collect();
        let ambient_len = space.basis().first().map(|c| c.to_ambient().len()).unwrap_or(0);

        let mut b_ambient = Vec::new();
        if let Some(p) = prev.as_ref().filter(|_| n > 1) {
            let mut escaped = false;
            for c in p.basis() {
                let image = spec.delta(&c)?;
                escaped |= compatible.coordinates(&image).is_none();
                b_ambient.push(image.to_ambient());
            }
            if escaped {
                warnings.push(format!("B^{n} is not contained in the degree-{n} cochain space"));
            }
        }
        let rank_b = rank_of(&b_ambient);
        let inter = if rank_b == 0 {
            Vec::new()
        } else {
            let mut both = z_ambient.clone();
            both.extend(b_ambient.iter().cloned());
            if rank_of(&both) == z_ambient.len() {
                b_ambient.clone()
            } else {
                warnings.push(format!(
                    "δ^{}∘δ^{} ≠ 0: B^{n} is not contained in Z^{n}; using B^{n} ∩ Z^{n}",
                    n,
                    n - 1
                ));
                intersection(&b_ambient, &z_ambient, ambient_len)
            }
        };
        let dim_b = rank_of(&inter);
        let inter_basis: Vec<Vec<Rational>> =
            independent_columns(&inter, ambient_len).into_iter().map(|i| inter[i].clone()).collect();
        let mut cols = inter_basis.clone();
        cols.extend(z_ambient.iter().cloned());
        let representatives: Vec<Cochain> = independent_columns(&cols, ambient_len)
            .into_iter()
            .filter(|&i| i >= inter_basis.len())
            .map(|i| cocycle_basis[i - inter_basis.len()].clone())
            .collect();
        let dim_z = cocycle_basis.len();
        debug_assert_eq!(representatives.len() + dim_b, dim_z);
        records.push(DegreeRecord {
            n,
            dim_c: space.dim(),
            dim_z,
            dim_b,
            dim_h: representatives.len(),
            cocycle_basis,
            representatives,
        });
        prev = Some(compatible);
    }
    Ok(ComplexSummary { flavor: spec.flavor(), convention, degrees: records, warnings })
}

/// The direct `H^n(φ,φ)` next to the three-factor sum
/// `dim H^n(A) + dim H^n(B) + dim H^{n−1}(A, B)`; `H⁰(A, B)` is the whole
/// target, matching the zero differential out of degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductComparison {
    pub degree: usize,
    pub direct: usize,
    pub h_source: usize,
    pub h_target: usize,
    pub h_cross: usize,
    pub product: usize,
    pub agrees: bool,
}

pub fn product_comparison(phi: &HomMorphism, n: usize) -> Result<ProductComparison, Error> {
    let direct = compute_cohomology(&ComplexSpec::for_morphism(phi), n..=n)?.degrees[0].dim_h;
    let h = |spec: ComplexSpec| -> Result<usize, Error> {
        Ok(compute_cohomology(&spec, n..=n)?.degrees[0].dim_h)
    };
    let h_source = h(ComplexSpec::for_algebra(&phi.source))?;
    let h_target = h(ComplexSpec::for_algebra(&phi.target))?;
    let h_cross = if n == 1 {
        phi.target.dim()
    } else {
        compute_cohomology(&ComplexSpec::with_values_in(phi), n - 1..=n - 1)?.degrees[0].dim_h
    };
    let product = h_source + h_target + h_cross;
    Ok(ProductComparison {
        degree: n,
        direct,
        h_source,
        h_target,
        h_cross,
        product,
        agrees: product == direct,
    })
}

/// `δ` evaluated in the associative flavor on an arity-1 map, by the hand formula
/// `μ(x, f(y)) − f(μ(x, y)) + μ(f(x), y)`; used as an independent check.
pub fn delta_one_by_hand(a: &HomAlgebra, f: &Matrix) -> MultilinearMap {
    let n = a.dim();
    MultilinearMap::from_fn(2, n, n, |t| {
        let (x, y) = (a.basis_vector(t[0]), a.basis_vector(t[1]));
        let first = a.mul.eval(&[&x, &f.column(t[1])]);
        let second = f.mul_vec(a.product(t[0], t[1]));
        let third = a.mul.eval(&[&f.column(t[0]), &y]);
        first.iter().zip(&second).zip(&third).map(|((p, q), r)| p - q + r).collect()
    })
}

//! JSON file formats for algebras, morphisms, deformations and cochains.
//!
//! Rationals are strings (`"3"`, `"-1/2"`). File references are paths
//! relative to the referencing file, `builtin:NAME` for a shipped fixture, or
//! an inline object.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{HomAlgebra, Kind};
use crate::cochain::MorphismCochain;
use crate::deformation::{FormalDeformation, MorphismDeformation};
use crate::error::Error;
use crate::exact::{format_rational, parse_rational, zero_vec, Matrix, Rational};
use crate::fixtures::{builtin, Builtin};
use crate::multilinear::{tuples, MultilinearMap};
use crate::rep::HomMorphism;

pub const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: Kind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub alpha: Vec<Vec<String>>,
    #[serde(default)]
    pub mul: Vec<ProductEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismRef {
    Path(String),
    Inline(Box<MorphismFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub degree: usize,
    pub mul: Vec<ProductEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiTermEntry {
    pub degree: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraRef>,
    pub order: usize,
    #[serde(default)]
    pub terms: Vec<TermEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phi_terms: Vec<PhiTermEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target_terms: Vec<TermEntry>,
}

/// A deformation file describes either an algebra or a morphism deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deformation {
    Algebra(FormalDeformation),
    Morphism(MorphismDeformation),
}

impl Deformation {
    pub fn order(&self) -> usize {
        match self {
            Deformation::Algebra(d) => d.order(),
            Deformation::Morphism(md) => md.order(),
        }
    }
}

fn parse_err(origin: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{origin}: {msg}"))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, Error> {
    // serde_json reports "... at line L column C".
    serde_json::from_str(text).map_err(|e| parse_err(origin, e))
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e))
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn matrix_from_strings(rows: &[Vec<String>], nrows: usize, ncols: usize, what: &str) -> Result<Matrix, Error> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse(format!("{what} must be {nrows}x{ncols}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed)
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn basis_index(basis: &[String], name: &str) -> Result<usize, Error> {
    basis
        .iter()
        .position(|b| b == name)
        .ok_or_else(|| Error::Parse(format!("unknown basis element '{name}'")))
}

fn vector_from_map(basis: &[String], value: &BTreeMap<String, String>) -> Result<Vec<Rational>, Error> {
    let mut v = zero_vec(basis.len());
    for (name, s) in value {
        v[basis_index(basis, name)?] = parse_rational(s)?;
    }
    Ok(v)
}

fn vector_to_map(basis: &[String], v: &[Rational]) -> BTreeMap<String, String> {
    basis
        .iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(b, x)| (b.clone(), format_rational(x)))
        .collect()
}

/// Products table to a bilinear map. For Lie, a missing reversed pair is
/// completed by antisymmetry and a present one must be its negative.
pub fn products_from_entries(entries: &[ProductEntry], basis: &[String], kind: Kind) -> Result<MultilinearMap, Error> {
    let n = basis.len();
    let mut given: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for e in entries {
        let key = (basis_index(basis, &e.left)?, basis_index(basis, &e.right)?);
        let v = vector_from_map(basis, &e.value)?;
        if given.insert(key, v).is_some() {
            return Err(Error::Parse(format!("product ({}, {}) given twice", e.left, e.right)));
        }
    }
    let mut mul = MultilinearMap::zero(2, n, n);
    for (&(i, j), v) in &given {
        mul.set(&[i, j], v);
        if kind == Kind::Lie && i != j {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            match given.get(&(j, i)) {
                Some(w) if *w != neg => {
                    return Err(Error::Parse(format!(
                        "bracket [{}, {}] is not the negative of [{}, {}]",
                        basis[j], basis[i], basis[i], basis[j]
                    )))
                }
                Some(_) => {}
                None => mul.set(&[j, i], &neg),
            }
        }
    }
    Ok(mul)
}

/// Nonzero products in basis order; Lie brackets are listed once, `left < right`
/// (diagonal entries are kept so a non-skew table survives a round trip).
pub fn products_to_entries(mul: &MultilinearMap, basis: &[String], kind: Kind) -> Vec<ProductEntry> {
    let mut out = Vec::new();
    for t in tuples(2, basis.len()) {
        if kind == Kind::Lie && t[0] > t[1] {
            let v = mul.value(&t);
            let mirrored: Vec<Rational> = mul.value(&[t[1], t[0]]).iter().map(|x| -x).collect();
            if v == mirrored.as_slice() {
                continue;
            }
        }
        let v = mul.value(&t);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        out.push(ProductEntry {
            left: basis[t[0]].clone(),
            right: basis[t[1]].clone(),
            value: vector_to_map(basis, v),
        });
    }
    out
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<HomAlgebra, Error> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        let basis = match &self.basis {
            Some(b) if b.len() != n => return Err(Error::Parse(format!("basis has {} names, dim is {n}", b.len()))),
            Some(b) => b.clone(),
            None => crate::algebra::default_basis("e", n),
        };
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::Parse(format!("basis name '{b}' repeated")));
            }
        }
        let alpha = matrix_from_strings(&self.alpha, n, n, "alpha")?;
        let mul = products_from_entries(&self.mul, &basis, self.kind)?;
        Ok(HomAlgebra::new(self.name.clone(), self.kind, mul, alpha)?.with_basis(basis))
    }

    pub fn from_algebra(a: &HomAlgebra) -> Self {
        AlgebraFile {
            name: a.name.clone(),
            kind: a.kind,
            dim: a.dim(),
            basis: Some(a.basis.clone()),
            alpha: matrix_to_strings(&a.alpha),
            mul: products_to_entries(&a.mul, &a.basis, a.kind),
        }
    }
}

fn terms_from_entries(entries: &[TermEntry], order: usize, base: &HomAlgebra) -> Result<Vec<MultilinearMap>, Error> {
    let n = base.dim();
    let mut terms = vec![MultilinearMap::zero(2, n, n); order];
    let mut seen = vec![false; order];
    for e in entries {
        if e.degree == 0 || e.degree > order {
            return Err(Error::Parse(format!("term degree {} outside 1..={order}", e.degree)));
        }
        if std::mem::replace(&mut seen[e.degree - 1], true) {
            return Err(Error::Parse(format!("term degree {} given twice", e.degree)));
        }
        terms[e.degree - 1] = products_from_entries(&e.mul, &base.basis, base.kind)?;
    }
    Ok(terms)
}

fn terms_to_entries(terms: &[MultilinearMap], base: &HomAlgebra) -> Vec<TermEntry> {
    terms
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| TermEntry { degree: i + 1, mul: products_to_entries(m, &base.basis, base.kind) })
        .collect()
}

impl MorphismFile {
    pub fn from_morphism(phi: &HomMorphism) -> Self {
        MorphismFile {
            source: AlgebraRef::Inline(Box::new(AlgebraFile::from_algebra(&phi.source))),
            target: AlgebraRef::Inline(Box::new(AlgebraFile::from_algebra(&phi.target))),
            matrix: matrix_to_strings(&phi.matrix),
        }
    }
}

impl DeformationFile {
    pub fn from_deformation(d: &Deformation) -> Self {
        match d {
            Deformation::Algebra(fd) => DeformationFile {
                morphism: None,
                algebra: Some(AlgebraRef::Inline(Box::new(AlgebraFile::from_algebra(&fd.base)))),
                order: fd.order(),
                terms: terms_to_entries(&fd.terms, &fd.base),
                phi_terms: Vec::new(),
                target_terms: Vec::new(),
            },
            Deformation::Morphism(md) => DeformationFile {
                morphism: Some(MorphismRef::Inline(Box::new(MorphismFile::from_morphism(&md.phi)))),
                algebra: None,
                order: md.order(),
                terms: terms_to_entries(&md.def_a.terms, &md.phi.source),
                phi_terms: md
                    .phi_terms
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_zero())
                    .map(|(i, m)| PhiTermEntry { degree: i + 1, matrix: matrix_to_strings(m) })
                    .collect(),
                target_terms: terms_to_entries(&md.def_b.terms, &md.phi.target),
            },
        }
    }
}

fn builtin_name(s: &str) -> Option<&str> {
    s.strip_prefix(BUILTIN_PREFIX)
}

/// Loads an algebra from a path (relative to `base`) or `builtin:NAME`.
pub fn load_algebra(spec: &str, base: &Path) -> Result<HomAlgebra, Error> {
    if let Some(name) = builtin_name(spec) {
        return match builtin(name)? {
            Builtin::Algebra(a) => Ok(a),
            _ => Err(Error::Parse(format!("fixture '{name}' is not an algebra"))),
        };
    }
    let path = base.join(spec);
    let file: AlgebraFile = parse_json(&read(&path)?, &path.display().to_string())?;
    file.to_algebra().map_err(|e| prefix(&path, e))
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) if !m.starts_with(&path.display().to_string()) => parse_err(&path.display().to_string(), m),
        other => other,
    }
}

fn resolve_algebra(r: &AlgebraRef, base: &Path) -> Result<HomAlgebra, Error> {
    match r {
        AlgebraRef::Path(p) => load_algebra(p, base),
        AlgebraRef::Inline(f) => f.to_algebra(),
    }
}

fn morphism_from_file(file: &MorphismFile, base: &Path) -> Result<HomMorphism, Error> {
    let source = resolve_algebra(&file.source, base)?;
    let target = resolve_algebra(&file.target, base)?;
    let matrix = matrix_from_strings(&file.matrix, target.dim(), source.dim(), "morphism matrix")?;
    HomMorphism::new(source, target, matrix)
}

pub fn load_morphism(spec: &str, base: &Path) -> Result<HomMorphism, Error> {
    if let Some(name) = builtin_name(spec) {
        return match builtin(name)? {
            Builtin::Morphism(m) => Ok(m),
            _ => Err(Error::Parse(format!("fixture '{name}' is not a morphism"))),
        };
    }
    let path = base.join(spec);
    let file: MorphismFile = parse_json(&read(&path)?, &path.display().to_string())?;
    morphism_from_file(&file, &base_dir(&path)).map_err(|e| prefix(&path, e))
}

fn resolve_morphism(r: &MorphismRef, base: &Path) -> Result<HomMorphism, Error> {
    match r {
        MorphismRef::Path(p) => load_morphism(p, base),
        MorphismRef::Inline(f) => morphism_from_file(f, base),
    }
}

fn deformation_from_file(file: &DeformationFile, base: &Path) -> Result<Deformation, Error> {
    let order = file.order;
    match &file.morphism {
        None => {
            let algebra = file
                .algebra
                .as_ref()
                .ok_or_else(|| Error::Parse("deformation needs 'algebra' or 'morphism'".into()))?;
            if !file.phi_terms.is_empty() || !file.target_terms.is_empty() {
                return Err(Error::Parse("phi_terms/target_terms need a 'morphism'".into()));
            }
            let a = resolve_algebra(algebra, base)?;
            let terms = terms_from_entries(&file.terms, order, &a)?;
            Ok(Deformation::Algebra(FormalDeformation::new(a, terms)?))
        }
        Some(m) => {
            let phi = resolve_morphism(m, base)?;
            if let Some(a) = &file.algebra {
                let a = resolve_algebra(a, base)?;
                if a.mul != phi.source.mul || a.alpha != phi.source.alpha {
                    return Err(Error::Parse("'algebra' differs from the morphism's source".into()));
                }
            }
            let terms_a = terms_from_entries(&file.terms, order, &phi.source)?;
            let terms_b = terms_from_entries(&file.target_terms, order, &phi.target)?;
            let mut phi_terms = vec![Matrix::zeros(phi.target.dim(), phi.source.dim()); order];
            let mut seen = vec![false; order];
            for e in &file.phi_terms {
                if e.degree == 0 || e.degree > order {
                    return Err(Error::Parse(format!("phi term degree {} outside 1..={order}", e.degree)));
                }
                if std::mem::replace(&mut seen[e.degree - 1], true) {
                    return Err(Error::Parse(format!("phi term degree {} given twice", e.degree)));
                }
                phi_terms[e.degree - 1] =
                    matrix_from_strings(&e.matrix, phi.target.dim(), phi.source.dim(), "phi term")?;
            }
            let def_a = FormalDeformation::new(phi.source.clone(), terms_a)?;
            let def_b = FormalDeformation::new(phi.target.clone(), terms_b)?;
            Ok(Deformation::Morphism(MorphismDeformation::new(phi, def_a, def_b, phi_terms)?))
        }
    }
}

pub fn load_deformation(spec: &str, base: &Path) -> Result<Deformation, Error> {
    if let Some(name) = builtin_name(spec) {
        return match builtin(name)? {
            Builtin::Deformation(d) => Ok(Deformation::Algebra(d)),
            Builtin::MorphismDeformation(md) => Ok(Deformation::Morphism(md)),
            _ => Err(Error::Parse(format!("fixture '{name}' is not a deformation"))),
        };
    }
    let path = base.join(spec);
    let file: DeformationFile = parse_json(&read(&path)?, &path.display().to_string())?;
    deformation_from_file(&file, &base_dir(&path)).map_err(|e| prefix(&path, e))
}

/// Parses a deformation from text; relative references resolve against `base`.
pub fn parse_deformation(text: &str, base: &Path) -> Result<Deformation, Error> {
    let file: DeformationFile = parse_json(text, "<input>")?;
    deformation_from_file(&file, base)
}

pub fn parse_algebra(text: &str) -> Result<HomAlgebra, Error> {
    let file: AlgebraFile = parse_json(text, "<input>")?;
    file.to_algebra()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainValue {
    pub args: Vec<String>,
    pub value: BTreeMap<String, String>,
}

/// Sparse listing of a multilinear map's nonzero values on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub arity: usize,
    pub values: Vec<CochainValue>,
}

impl CochainJson {
    pub fn from_map(f: &MultilinearMap, source: &[String], target: &[String]) -> Self {
        let values = tuples(f.arity(), f.source_dim())
            .filter(|t| !f.value(t).iter().all(Zero::is_zero))
            .map(|t| CochainValue {
                args: t.iter().map(|&i| source[i].clone()).collect(),
                value: vector_to_map(target, f.value(&t)),
            })
            .collect();
        CochainJson { arity: f.arity(), values }
    }

    pub fn to_map(&self, source: &[String], target: &[String]) -> Result<MultilinearMap, Error> {
        let mut f = MultilinearMap::zero(self.arity, source.len(), target.len());
        for v in &self.values {
            if v.args.len() != self.arity {
                return Err(Error::Parse(format!("cochain value has {} arguments, arity is {}", v.args.len(), self.arity)));
            }
            let t = v.args.iter().map(|a| basis_index(source, a)).collect::<Result<Vec<_>, _>>()?;
            f.set(&t, &vector_from_map(target, &v.value)?);
        }
        Ok(f)
    }
}

/// The three components of a morphism-complex cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismCochainJson {
    pub source: CochainJson,
    pub target: CochainJson,
    pub morphism: CochainJson,
}

impl MorphismCochainJson {
    pub fn from_cochain(c: &MorphismCochain, phi: &HomMorphism) -> Self {
        MorphismCochainJson {
            source: CochainJson::from_map(&c.comp_a, &phi.source.basis, &phi.source.basis),
            target: CochainJson::from_map(&c.comp_b, &phi.target.basis, &phi.target.basis),
            morphism: CochainJson::from_map(&c.comp_ab, &phi.source.basis, &phi.target.basis),
        }
    }

    pub fn to_cochain(&self, phi: &HomMorphism) -> Result<MorphismCochain, Error> {
        let (sa, sb) = (&phi.source.basis, &phi.target.basis);
        let c = MorphismCochain {
            comp_a: self.source.to_map(sa, sa)?,
            comp_b: self.target.to_map(sb, sb)?,
            comp_ab: self.morphism.to_map(sa, sb)?,
        };
        if c.comp_a.arity() != c.comp_b.arity() || c.comp_ab.arity() + 1 != c.comp_a.arity() {
            return Err(Error::Parse("morphism cochain components have inconsistent arities".into()));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip() {
        for a in [fixtures::a3(rat(1), rat(2)), fixtures::g2(), fixtures::b2(rat(1))] {
            let text = serde_json::to_string_pretty(&AlgebraFile::from_algebra(&a)).unwrap();
            assert_eq!(parse_algebra(&text).unwrap(), a);
        }
    }

    #[test]
    fn lie_completion_and_consistency() {
        let text = r#"{"name":"h","kind":"lie","dim":3,"alpha":[["1","0","0"],["0","1","0"],["0","0","1"]],
            "mul":[{"left":"e1","right":"e2","value":{"e3":"1"}}]}"#;
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.product(1, 0), &[rat(0), rat(0), rat(-1)]);
        let bad = text.replace(
            r#"{"e3":"1"}}]"#,
            r#"{"e3":"1"}},{"left":"e2","right":"e1","value":{"e3":"1"}}]"#,
        );
        assert!(matches!(parse_algebra(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_unknown_fields_and_bad_rationals() {
        let base = r#"{"name":"x","kind":"associative","dim":1,"alpha":[["1"]],"mul":[]}"#;
        assert!(parse_algebra(base).is_ok());
        let extra = base.replace(r#""mul":[]"#, r#""mul":[],"colour":"red""#);
        assert!(parse_algebra(&extra).is_err());
        let zero_den = base.replace(r#"[["1"]]"#, r#"[["1/0"]]"#);
        assert!(parse_algebra(&zero_den).is_err());
        let err = parse_algebra("{\n\"name\": 3}").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn deformation_round_trip() {
        for d in [
            Deformation::Algebra(fixtures::def_g1(rat(1))),
            Deformation::Morphism(fixtures::mdef_2(false)),
        ] {
            let text = serde_json::to_string(&DeformationFile::from_deformation(&d)).unwrap();
            assert_eq!(parse_deformation(&text, Path::new(".")).unwrap(), d);
        }
    }

    #[test]
    fn cochain_round_trip() {
        let phi = fixtures::phi_a3_b2();
        let mut g = crate::random::Generator::new(1);
        let c = MorphismCochain {
            comp_a: g.multilinear(2, 3, 3),
            comp_b: g.multilinear(2, 2, 2),
            comp_ab: g.multilinear(1, 3, 2),
        };
        let json = serde_json::to_string(&MorphismCochainJson::from_cochain(&c, &phi)).unwrap();
        let back: MorphismCochainJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_cochain(&phi).unwrap(), c);
    }

    #[test]
    fn builtin_references() {
        let a = load_algebra("builtin:g1(2,3)", Path::new("")).unwrap();
        assert_eq!(a, fixtures::g1(rat(2), rat(3)));
        assert!(load_morphism("builtin:g2", Path::new("")).is_err());
    }
}

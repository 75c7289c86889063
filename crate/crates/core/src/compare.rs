//! Published values for the shipped fixtures and their comparison with
//! computed ones.
//!
//! An item is `hard` when a mismatch is a defect of this tool; otherwise a
//! mismatch is a finding about the published value and is reported, not
//! failed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::HomAlgebra;
use crate::cohomology::{compute_cohomology_with, CocycleConvention, ComplexSpec};
use crate::deformation::check_morphism_deformation;
use crate::error::Error;
use crate::fixtures::{builtin, Builtin};
use crate::report::{summary_json, validity_json, violation_json, Names};
use crate::rep::HomMorphism;

const EXPECTATIONS: &str = include_str!("../data/expectations.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Valid,
    Cohomology,
    ValuesIn,
    MorphismCohomology,
    Deformation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub id: String,
    pub criterion: u32,
    /// Fixture name as understood by [`builtin`].
    pub subject: String,
    pub check: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default)]
    pub convention: CocycleConvention,
    /// `true`/`false` for validity; otherwise an object of expected fields.
    pub expect: Value,
    pub hard: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectationFile {
    items: Vec<Expectation>,
}

pub fn expectations() -> Vec<Expectation> {
    let file: ExpectationFile = serde_json::from_str(EXPECTATIONS).expect("shipped expectations parse");
    file.items
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Finding,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Finding => "FINDING",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItemResult {
    pub id: String,
    pub criterion: u32,
    pub subject: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    /// Supporting data: witnesses, warnings, representatives.
    pub evidence: Value,
}

impl ItemResult {
    pub fn line(&self) -> String {
        format!("{} {} expected {} computed {}", self.status, self.id, self.expected, self.computed)
    }
}

/// `computed` restricted to the keys of `expected`.
fn project(expected: &Value, computed: &Value) -> Value {
    match expected {
        Value::Object(keys) => {
            Value::Object(keys.keys().map(|k| (k.clone(), computed.get(k).cloned().unwrap_or(Value::Null))).collect())
        }
        _ => computed.clone(),
    }
}

fn algebra_of(subject: &str) -> Result<HomAlgebra, Error> {
    match builtin(subject)? {
        Builtin::Algebra(a) => Ok(a),
        _ => Err(Error::Parse(format!("'{subject}' is not an algebra"))),
    }
}

fn morphism_of(subject: &str) -> Result<HomMorphism, Error> {
    match builtin(subject)? {
        Builtin::Morphism(m) => Ok(m),
        _ => Err(Error::Parse(format!("'{subject}' is not a morphism"))),
    }
}

fn degree_of(e: &Expectation) -> Result<usize, Error> {
    e.degree.ok_or_else(|| Error::Parse(format!("item '{}' needs a degree", e.id)))
}

fn dims(summary: &crate::cohomology::ComplexSummary) -> Value {
    let d = &summary.degrees[0];
    json!({"c": d.dim_c, "z": d.dim_z, "b": d.dim_b, "h": d.dim_h})
}

/// Computes `(computed, evidence)` for an item.
fn compute(e: &Expectation) -> Result<(Value, Value), Error> {
    match e.check {
        CheckKind::Valid => match builtin(&e.subject)? {
            Builtin::Algebra(a) => {
                let r = a.validate();
                Ok((json!(r.is_valid), validity_json(&a, &r)))
            }
            Builtin::Morphism(phi) => {
                let r = phi.check();
                let ok = r.is_valid && phi.source.is_valid() && phi.target.is_valid();
                let witness = r.witness.as_ref().map(|w| violation_json(w, &phi.source.basis, &phi.target.basis));
                Ok((json!(ok), json!({ "witness": witness })))
            }
            _ => Err(Error::Parse(format!("cannot validate '{}'", e.subject))),
        },
        CheckKind::Cohomology => {
            let a = algebra_of(&e.subject)?;
            let n = degree_of(e)?;
            let s = compute_cohomology_with(&ComplexSpec::for_algebra(&a), n..=n, e.convention)?;
            Ok((dims(&s), summary_json(&s, Names::algebra(&a), true)))
        }
        CheckKind::ValuesIn => {
            let phi = morphism_of(&e.subject)?;
            let n = degree_of(e)?;
            let s = compute_cohomology_with(&ComplexSpec::with_values_in(&phi), n..=n, e.convention)?;
            Ok((dims(&s), summary_json(&s, Names::values_in(&phi), true)))
        }
        CheckKind::MorphismCohomology => {
            let phi = morphism_of(&e.subject)?;
            let n = degree_of(e)?;
            let s = compute_cohomology_with(&ComplexSpec::for_morphism(&phi), n..=n, e.convention)?;
            Ok((dims(&s), summary_json(&s, Names::morphism(&phi), false)))
        }
        CheckKind::Deformation => {
            let md = match builtin(&e.subject)? {
                Builtin::MorphismDeformation(md) => md,
                _ => return Err(Error::Parse(format!("'{}' is not a morphism deformation", e.subject))),
            };
            let r = check_morphism_deformation(&md, None)?;
            let computed = json!({
                "source": r.source_ok(),
                "target": r.target_ok(),
                "morphism": r.morphism_ok(),
                "twist": r.twist_ok(),
            });
            let evidence = crate::report::deformation_report_json(&r, Some(&md.phi), &md.phi.source);
            Ok((computed, evidence))
        }
    }
}

pub fn evaluate(e: &Expectation) -> ItemResult {
    let (status, computed, evidence) = match compute(e) {
        Ok((computed, evidence)) => {
            let matches = project(&e.expect, &computed) == e.expect;
            let status = match (matches, e.hard) {
                (true, _) => Status::Pass,
                (false, true) => Status::Fail,
                (false, false) => Status::Finding,
            };
            (status, computed, evidence)
        }
        Err(err) => (Status::Fail, Value::Null, json!({ "error": err.to_string() })),
    };
    ItemResult {
        id: e.id.clone(),
        criterion: e.criterion,
        subject: e.subject.clone(),
        status,
        expected: e.expect.clone(),
        computed: project(&e.expect, &computed),
        evidence,
    }
}

/// Worst status among the items of a criterion (`None` if it has no items).
pub fn criterion_status(results: &[ItemResult], criterion: u32) -> Option<Status> {
    results.iter().filter(|r| r.criterion == criterion).map(|r| r.status).max()
}

/// Items about an algebra structurally equal to `a` (names ignored).
pub fn items_for_algebra(a: &HomAlgebra, check: CheckKind) -> Vec<Expectation> {
    expectations()
        .into_iter()
        .filter(|e| e.check == check)
        .filter(|e| match builtin(&e.subject) {
            Ok(Builtin::Algebra(b)) => b.kind == a.kind && b.mul == a.mul && b.alpha == a.alpha,
            _ => false,
        })
        .collect()
}

/// Items about a morphism structurally equal to `phi`.
pub fn items_for_morphism(phi: &HomMorphism, check: CheckKind) -> Vec<Expectation> {
    let same = |x: &HomAlgebra, y: &HomAlgebra| x.kind == y.kind && x.mul == y.mul && x.alpha == y.alpha;
    expectations()
        .into_iter()
        .filter(|e| e.check == check)
        .filter(|e| match builtin(&e.subject) {
            Ok(Builtin::Morphism(m)) => {
                same(&m.source, &phi.source) && same(&m.target, &phi.target) && m.matrix == phi.matrix
            }
            _ => false,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectations_parse_and_subjects_resolve() {
        let items = expectations();
        assert!(items.len() >= 25);
        for e in &items {
            builtin(&e.subject).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            assert!((1..=5).contains(&e.criterion));
        }
    }

    #[test]
    fn hard_mismatch_fails_soft_mismatch_finds() {
        let mut e = expectations().into_iter().find(|e| e.id == "a3-h2").unwrap();
        assert_eq!(evaluate(&e).status, Status::Pass);
        e.expect = json!({"h": 5});
        assert_eq!(evaluate(&e).status, Status::Fail);
        e.hard = false;
        assert_eq!(evaluate(&e).status, Status::Finding);
    }

    #[test]
    fn structural_lookup() {
        let a = crate::fixtures::g1(crate::exact::rat(2), crate::exact::rat(3)).with_basis(crate::algebra::default_basis("x", 3));
        let items = items_for_algebra(&a, CheckKind::Cohomology);
        assert_eq!(items.len(), 1);
        assert_eq!(items[0].id, "g1(2,3)-h2");
    }
}

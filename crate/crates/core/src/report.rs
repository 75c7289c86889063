//! JSON renderings of reports, with basis names in place of indices.
//!
//! Objects are `serde_json::Map`s (sorted keys), so output is byte-stable.

use serde_json::{json, Value};

use crate::algebra::{describe_vector, HomAlgebra, ValidityReport, Violation};
use crate::cohomology::{Cochain, ComplexSummary, ProductComparison};
use crate::deformation::{DeformationCheck, DeformationReport, DeformationWitness, Infinitesimal, Obstruction};
use crate::exact::{format_rational, Rational};
use crate::format::{CochainJson, MorphismCochainJson};
use crate::rep::{HomMorphism, MorphismReport};

pub fn vector_json(basis: &[String], v: &[Rational]) -> Value {
    let map: serde_json::Map<String, Value> = basis
        .iter()
        .zip(v)
        .filter(|(_, x)| !num::Zero::is_zero(*x))
        .map(|(b, x)| (b.clone(), Value::String(format_rational(x))))
        .collect();
    Value::Object(map)
}

pub fn violation_json(v: &Violation, args_basis: &[String], value_basis: &[String]) -> Value {
    json!({
        "axiom": v.axiom,
        "args": v.args.iter().map(|&i| args_basis[i].clone()).collect::<Vec<_>>(),
        "defect": vector_json(value_basis, &v.defect),
    })
}

pub fn violation_text(v: &Violation, args_basis: &[String], value_basis: &[String]) -> String {
    let args: Vec<&str> = v.args.iter().map(|&i| args_basis[i].as_str()).collect();
    format!("{:?} fails on ({}): defect {}", v.axiom, args.join(", "), describe_vector(value_basis, &v.defect))
}

pub fn validity_json(a: &HomAlgebra, r: &ValidityReport) -> Value {
    json!({
        "name": a.name,
        "kind": a.kind,
        "dim": a.dim(),
        "is_valid": r.is_valid,
        "witness": r.witness.as_ref().map(|w| violation_json(w, &a.basis, &a.basis)),
        "multiplicative": r.multiplicative,
        "multiplicative_witness": r.multiplicative_witness.as_ref().map(|w| violation_json(w, &a.basis, &a.basis)),
    })
}

pub fn morphism_report_json(phi: &HomMorphism, r: &MorphismReport) -> Value {
    json!({
        "source": validity_json(&phi.source, &phi.source.validate()),
        "target": validity_json(&phi.target, &phi.target.validate()),
        "is_valid": r.is_valid,
        "witness": r.witness.as_ref().map(|w| violation_json(w, &phi.source.basis, &phi.target.basis)),
    })
}

/// Names for a complex's cochains: source basis, value basis, and the
/// morphism when cochains are triples.
#[derive(Clone, Copy, Debug)]
pub struct Names<'a> {
    pub source: &'a [String],
    pub target: &'a [String],
    pub morphism: Option<&'a HomMorphism>,
}

impl<'a> Names<'a> {
    pub fn algebra(a: &'a HomAlgebra) -> Self {
        Names { source: &a.basis, target: &a.basis, morphism: None }
    }

    /// Values in the target of `φ`.
    pub fn values_in(phi: &'a HomMorphism) -> Self {
        Names { source: &phi.source.basis, target: &phi.target.basis, morphism: None }
    }

    pub fn morphism(phi: &'a HomMorphism) -> Self {
        Names { source: &phi.source.basis, target: &phi.target.basis, morphism: Some(phi) }
    }
}

pub fn cochain_json(c: &Cochain, names: Names<'_>) -> Value {
    match (c, names.morphism) {
        (Cochain::Single(f), _) => serde_json::to_value(CochainJson::from_map(f, names.source, names.target)),
        (Cochain::Triple(t), Some(phi)) => serde_json::to_value(MorphismCochainJson::from_cochain(t, phi)),
        (Cochain::Triple(_), None) => Ok(Value::Null),
    }
    .expect("plain data serializes")
}

pub fn summary_json(s: &ComplexSummary, names: Names<'_>, with_bases: bool) -> Value {
    let degrees: Vec<Value> = s
        .degrees
        .iter()
        .map(|d| {
            let mut v = json!({
                "n": d.n,
                "dim_c": d.dim_c,
                "dim_z": d.dim_z,
                "dim_b": d.dim_b,
                "dim_h": d.dim_h,
                "representatives": d.representatives.iter().map(|c| cochain_json(c, names)).collect::<Vec<_>>(),
            });
            if with_bases {
                v["cocycle_basis"] = d.cocycle_basis.iter().map(|c| cochain_json(c, names)).collect();
            }
            v
        })
        .collect();
    json!({
        "flavor": s.flavor,
        "convention": s.convention,
        "warnings": s.warnings,
        "degrees": degrees,
    })
}

pub fn product_comparison_json(p: &ProductComparison) -> Value {
    serde_json::to_value(p).expect("plain data serializes")
}

fn witness_json(w: &DeformationWitness, phi: Option<&HomMorphism>, base: &HomAlgebra) -> Value {
    let (args, values): (&[String], &[String]) = match (w.check, phi) {
        (DeformationCheck::SourceSkew | DeformationCheck::SourceIdentity, Some(p)) => (&p.source.basis, &p.source.basis),
        (DeformationCheck::TargetSkew | DeformationCheck::TargetIdentity, Some(p)) => (&p.target.basis, &p.target.basis),
        (DeformationCheck::MorphismEquation | DeformationCheck::TwistEquation, Some(p)) => {
            (&p.source.basis, &p.target.basis)
        }
        (_, None) => (&base.basis, &base.basis),
    };
    json!({
        "check": w.check,
        "order": w.order,
        "args": w.args.iter().map(|&i| args[i].clone()).collect::<Vec<_>>(),
        "defect": vector_json(values, &w.defect),
    })
}

pub fn deformation_report_json(r: &DeformationReport, phi: Option<&HomMorphism>, base: &HomAlgebra) -> Value {
    let orders: Vec<Value> = r
        .orders
        .iter()
        .map(|o| {
            json!({
                "order": o.order,
                "source_ok": o.algebra_a_ok,
                "target_ok": o.algebra_b_ok,
                "morphism_ok": o.morphism_eq_ok,
                "twist_ok": o.twist_eq_ok,
                "witnesses": o.witnesses.iter().map(|w| witness_json(w, phi, base)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut v = json!({
        "up_to": r.up_to,
        "ok": r.ok(),
        "source_ok": r.source_ok(),
        "first_failure": r.first_failure(),
        "orders": orders,
    });
    if phi.is_some() {
        v["target_ok"] = json!(r.target_ok());
        v["morphism_ok"] = json!(r.morphism_ok());
        v["twist_ok"] = json!(r.twist_ok());
    }
    v
}

const SLOTS: [&str; 3] = ["source", "target", "morphism"];

fn slots_json(is: &[bool], trusted: &[bool]) -> Value {
    let names: &[&str] = if is.len() == 1 { &["algebra"] } else { &SLOTS };
    Value::Object(
        names
            .iter()
            .zip(is.iter().zip(trusted))
            .map(|(n, (&ok, &t))| (n.to_string(), json!({"cocycle": ok, "trusted": t})))
            .collect(),
    )
}

pub fn infinitesimal_json(x: &Infinitesimal, names: Names<'_>) -> Value {
    json!({
        "order": x.order,
        "theta": cochain_json(&x.theta, names),
        "is_cocycle": x.is_cocycle(),
        "slots": slots_json(&x.slot_is_cocycle, &x.slot_trusted),
    })
}

pub fn obstruction_json(o: &Obstruction, names: Names<'_>) -> Value {
    json!({
        "order": o.order,
        "cochain": cochain_json(&o.cochain, names),
        "formula_matches_residual": o.formula_matches_residual,
        "input_valid": o.input_valid,
        "is_cocycle": o.is_cocycle(),
        "slots": slots_json(&o.slot_is_cocycle, &o.slot_trusted),
        "is_coboundary": o.is_coboundary(),
        "primitive": o.primitive.as_ref().map(|c| cochain_json(c, names)),
    })
}

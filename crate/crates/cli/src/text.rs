//! Human-readable renderings; the JSON forms live in the library.

use std::fmt::Write;

use homcoh_core::algebra::{describe_vector, HomAlgebra, ValidityReport};
use homcoh_core::cohomology::{Cochain, ComplexSummary};
use homcoh_core::deformation::{DeformationReport, Infinitesimal, Obstruction};
use homcoh_core::exact::is_zero_vec;
use homcoh_core::multilinear::{tuples, MultilinearMap};
use homcoh_core::report::{violation_text, Names};
use homcoh_core::rep::{HomMorphism, MorphismReport};
use homcoh_core::suite::SuiteReport;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILS"
    }
}

pub fn validity(a: &HomAlgebra, r: &ValidityReport) -> String {
    let mut s = format!("{} ({}, dim {}): {}\n", a.name, a.kind, a.dim(), if r.is_valid { "valid" } else { "INVALID" });
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "  {}", violation_text(w, &a.basis, &a.basis));
    }
    let _ = writeln!(s, "  twist multiplicative: {}", if r.multiplicative { "yes" } else { "no" });
    if let Some(w) = &r.multiplicative_witness {
        let _ = writeln!(s, "  {}", violation_text(w, &a.basis, &a.basis));
    }
    s
}

pub fn morphism(phi: &HomMorphism, r: &MorphismReport) -> String {
    let mut s = String::from("source: ");
    s.push_str(&validity(&phi.source, &phi.source.validate()));
    s.push_str("target: ");
    s.push_str(&validity(&phi.target, &phi.target.validate()));
    let _ = writeln!(s, "morphism: {}", if r.is_valid { "valid" } else { "INVALID" });
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "  {}", violation_text(w, &phi.source.basis, &phi.target.basis));
    }
    s
}

fn map_text(label: &str, f: &MultilinearMap, source: &[String], target: &[String], out: &mut String) {
    let mut any = false;
    for t in tuples(f.arity(), f.source_dim()) {
        let v = f.value(&t);
        if is_zero_vec(v) {
            continue;
        }
        any = true;
        let args: Vec<&str> = t.iter().map(|&i| source[i].as_str()).collect();
        let _ = writeln!(out, "      {label}({}) = {}", args.join(", "), describe_vector(target, v));
    }
    if !any {
        let _ = writeln!(out, "      {label} = 0");
    }
}

pub fn cochain(c: &Cochain, names: Names<'_>) -> String {
    let mut out = String::new();
    match (c, names.morphism) {
        (Cochain::Single(f), _) => map_text("f", f, names.source, names.target, &mut out),
        (Cochain::Triple(t), Some(phi)) => {
            map_text("a", &t.comp_a, &phi.source.basis, &phi.source.basis, &mut out);
            map_text("b", &t.comp_b, &phi.target.basis, &phi.target.basis, &mut out);
            map_text("c", &t.comp_ab, &phi.source.basis, &phi.target.basis, &mut out);
        }
        (Cochain::Triple(_), None) => out.push_str("      (triple)\n"),
    }
    out
}

pub fn summary(s: &ComplexSummary, names: Names<'_>) -> String {
    let mut out = format!("{:?} complex, {:?} cocycles\n", s.flavor, s.convention);
    let _ = writeln!(out, "  {:>3} {:>7} {:>7} {:>7} {:>7}", "n", "dim C", "dim Z", "dim B", "dim H");
    for d in &s.degrees {
        let _ = writeln!(out, "  {:>3} {:>7} {:>7} {:>7} {:>7}", d.n, d.dim_c, d.dim_z, d.dim_b, d.dim_h);
    }
    for d in s.degrees.iter().filter(|d| d.dim_h > 0) {
        let _ = writeln!(out, "  H^{} representatives:", d.n);
        for (i, r) in d.representatives.iter().enumerate() {
            let _ = writeln!(out, "    [{}]", i + 1);
            out.push_str(&cochain(r, names));
        }
    }
    for w in &s.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    out
}

fn opt(v: Option<bool>) -> &'static str {
    match v {
        None => "-",
        Some(b) => verdict(b),
    }
}

pub fn deformation_report(r: &DeformationReport, phi: Option<&HomMorphism>, base: &HomAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  {:>5} {:>7} {:>7} {:>9} {:>7}", "order", "source", "target", "morphism", "twist");
    for o in &r.orders {
        let _ = writeln!(
            out,
            "  {:>5} {:>7} {:>7} {:>9} {:>7}",
            o.order,
            verdict(o.algebra_a_ok),
            opt(o.algebra_b_ok),
            opt(o.morphism_eq_ok),
            opt(o.twist_eq_ok)
        );
    }
    let json = homcoh_core::report::deformation_report_json(r, phi, base);
    for o in json["orders"].as_array().into_iter().flatten() {
        for w in o["witnesses"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "  witness: {w}");
        }
    }
    let _ = writeln!(out, "source deformation: {}", verdict(r.source_ok()));
    if phi.is_some() {
        let _ = writeln!(out, "target deformation: {}", verdict(r.target_ok()));
        let _ = writeln!(out, "morphism equation: {}", verdict(r.morphism_ok()));
        let _ = writeln!(out, "twist equation: {}", verdict(r.twist_ok()));
    }
    out
}

fn slots(is: &[bool], trusted: &[bool]) -> String {
    let names: &[&str] = if is.len() == 1 { &["algebra"] } else { &["source", "target", "morphism"] };
    names
        .iter()
        .zip(is.iter().zip(trusted))
        .map(|(n, (&ok, &t))| format!("{n}: {}{}", if ok { "cocycle" } else { "NOT a cocycle" }, if t { "" } else { " (untrusted input)" }))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn infinitesimal(x: &Infinitesimal, names: Names<'_>) -> String {
    let mut out = format!("first nonzero order: {}\n", x.order);
    out.push_str(&cochain(&x.theta, names));
    let _ = writeln!(out, "{}", slots(&x.slot_is_cocycle, &x.slot_trusted));
    out
}

pub fn obstruction(o: &Obstruction, names: Names<'_>) -> String {
    let mut out = format!("obstruction at order {}\n", o.order);
    out.push_str(&cochain(&o.cochain, names));
    let _ = writeln!(out, "{}", slots(&o.slot_is_cocycle, &o.slot_trusted));
    let _ = writeln!(out, "formula agrees with the residual: {}", if o.formula_matches_residual { "yes" } else { "no" });
    if !o.input_valid {
        let _ = writeln!(out, "warning: the input does not satisfy its equations through its order");
    }
    let _ = writeln!(out, "coboundary: {}", if o.is_coboundary() { "yes (extends)" } else { "no (obstructed)" });
    out
}

pub fn suite(r: &SuiteReport) -> String {
    let mut out = format!("seed {}\n", r.seed);
    for c in &r.checks {
        let _ = writeln!(out, "{} {} ({} cases, {} failures)", if c.ok() { "PASS" } else { "FAIL" }, c.name, c.cases, c.failures);
        for n in &c.notes {
            let _ = writeln!(out, "    {n}");
        }
        for d in &c.details {
            let _ = writeln!(out, "    {d}");
        }
    }
    out
}

//! Exit codes and output shapes of the command-line tool.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.display().to_string()
}

fn homcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcoh")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn valid_algebra_exits_zero() {
    let out = homcoh(&["validate", &fixture("a3.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_valid"], true, "{}", stdout(&out));
}

#[test]
fn invalid_algebra_exits_one_with_witness() {
    let out = homcoh(&["validate", &fixture("g2.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("f1 - 4*f2 - f3"), "{}", stdout(&out));
}

#[test]
fn malformed_input_exits_two() {
    let out = homcoh(&["validate", &fixture("bad_rational.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1/0"));
    let out = homcoh(&["cohomology", &fixture("a3.json"), "--degree", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn arity_limit_is_an_input_error() {
    let out = homcoh(&["cohomology", &fixture("a3.json"), "--degree", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_of_a3_in_json() {
    let out = homcoh(&["cohomology", &fixture("a3.json"), "--degree", "1..2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let h: Vec<u64> = v["complex"]["degrees"].as_array().unwrap().iter().map(|d| d["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(h, [1, 0]);
}

#[test]
fn builtin_names_work_in_place_of_files() {
    let out = homcoh(&["cohomology", "builtin:b2(1)", "--degree", "2", "--cocycles", "unconstrained", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let d = &json(&out)["complex"]["degrees"][0];
    assert_eq!((d["dim_z"].as_u64(), d["dim_b"].as_u64(), d["dim_h"].as_u64()), (Some(3), Some(2), Some(1)));
}

#[test]
fn invalid_target_needs_force() {
    let m = fixture("phi12_1.json");
    assert_eq!(homcoh(&["morphism-cohomology", &m, "--degree", "1"]).status.code(), Some(1));
    let out = homcoh(&["morphism-cohomology", &m, "--degree", "1", "--force", "--compare-paper"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("FINDING phi12-1-h1"), "{}", stdout(&out));
}

#[test]
fn deformation_of_a_morphism_reports_each_equation() {
    let out = homcoh(&["deform", "check", &fixture("mdef_2.json"), "--json"]);
    // the target algebra is not Hom-Lie, so its deformation cannot pass
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!((&r["source_ok"], &r["morphism_ok"], &r["twist_ok"]), (&Value::Bool(true), &Value::Bool(true), &Value::Bool(true)));
    assert_eq!(r["target_ok"], false);
}

#[test]
fn extend_writes_a_loadable_deformation() {
    let out = homcoh(&["deform", "extend", &fixture("a3_order1.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["order"], 2);
    let dir = std::env::temp_dir().join(format!("homcoh-extend-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a3_order2.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = homcoh(&["deform", "check", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
}

#[test]
fn infinitesimal_of_def_g1_is_a_cocycle() {
    let out = homcoh(&["deform", "infinitesimal", &fixture("def_g1.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 1);
    assert_eq!(v["is_cocycle"], true);
}

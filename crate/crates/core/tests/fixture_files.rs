//! The shipped JSON fixtures load to the same objects as the named builtins.

use std::path::{Path, PathBuf};

use homcoh_core::deformation::{check_algebra_deformation, extend_algebra_deformation, Extension};
use homcoh_core::fixtures::{builtin, Builtin};
use homcoh_core::format::{load_algebra, load_deformation, load_morphism, Deformation};
use homcoh_core::Error;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

const ALGEBRAS: [(&str, &str); 12] = [
    ("a3.json", "a3(1,2)"),
    ("a3_b1.json", "a3(1,1)"),
    ("b2.json", "b2(1)"),
    ("g1_2_3.json", "g1(2,3)"),
    ("g1_0_1.json", "g1(0,1)"),
    ("g1_2_2.json", "g1(2,2)"),
    ("g1_2_0.json", "g1(2,0)"),
    ("g2.json", "g2"),
    ("l4_first.json", "l4_first(1,1,1,1)"),
    ("l4_second_e1.json", "l4_second(2,1,1,1,1)"),
    ("l4_second_em1.json", "l4_second(2,1,1,1,-1)"),
    ("heisenberg.json", "heisenberg"),
];

#[test]
fn algebra_files_match_builtins() {
    for (file, name) in ALGEBRAS {
        let loaded = load_algebra(file, &dir()).unwrap_or_else(|e| panic!("{file}: {e}"));
        let Ok(Builtin::Algebra(expected)) = builtin(name) else { panic!("{name}") };
        assert_eq!(loaded, expected, "{file}");
    }
}

#[test]
fn morphism_files_match_builtins() {
    for (file, name) in [("phi_a3_b2.json", "phi_a3_b2(2)"), ("phi12_1.json", "phi12_1"), ("phi12_2.json", "phi12_2")] {
        let loaded = load_morphism(file, &dir()).unwrap_or_else(|e| panic!("{file}: {e}"));
        let Ok(Builtin::Morphism(expected)) = builtin(name) else { panic!("{name}") };
        assert_eq!(loaded, expected, "{file}");
    }
}

#[test]
fn deformation_files_match_builtins() {
    let Deformation::Algebra(d) = load_deformation("def_g1.json", &dir()).unwrap() else { panic!() };
    assert_eq!(Builtin::Deformation(d), builtin("def_g1(1)").unwrap());
    let Deformation::Morphism(md) = load_deformation("mdef_2.json", &dir()).unwrap() else { panic!() };
    assert_eq!(Builtin::MorphismDeformation(md), builtin("mdef_2").unwrap());
}

#[test]
fn a3_first_order_file_is_a_deformation_that_extends() {
    let Deformation::Algebra(d) = load_deformation("a3_order1.json", &dir()).unwrap() else { panic!() };
    // a truncated family only has to hold through its own order
    assert!(check_algebra_deformation(&d, None).unwrap().ok_through(1));
    match extend_algebra_deformation(&d).unwrap() {
        Extension::Extended { deformation, report } => {
            assert_eq!(deformation.order(), 2);
            assert!(report.ok_through(2));
        }
        Extension::Obstructed { obstruction, .. } => assert!(!obstruction.is_coboundary()),
    }
}

#[test]
fn bad_rational_file_is_a_parse_error() {
    match load_algebra("bad_rational.json", &dir()) {
        Err(Error::Parse(m)) => assert!(m.contains("bad_rational.json") && m.contains("1/0"), "{m}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn missing_file_is_reported() {
    assert!(load_algebra("no_such_file.json", &dir()).is_err());
}

//! `homcoh`: batch front end for the cohomology and deformation library.
//!
//! Exit codes: 0 success, 1 mathematical failure (invalid input structure,
//! not a cocycle, no extension), 2 input error.

use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homcoh_core::algebra::{HomAlgebra, Kind};
use homcoh_core::cohomology::{compute_cohomology_with, product_comparison, CocycleConvention, ComplexSpec};
use homcoh_core::compare::{evaluate, items_for_algebra, items_for_morphism, CheckKind, ItemResult};
use homcoh_core::deformation::{
    check_algebra_deformation, check_morphism_deformation, extend_algebra_deformation, extend_deformation,
    infinitesimal, infinitesimal_algebra, obstruction, obstruction_algebra, Extension,
};
use homcoh_core::fixtures::{builtin, Builtin};
use homcoh_core::format::{self, Deformation, DeformationFile, BUILTIN_PREFIX};
use homcoh_core::report::{self, Names};
use homcoh_core::rep::HomMorphism;
use homcoh_core::suite::{run_suite, SuiteSize, DEFAULT_SEED};
use homcoh_core::Error;

mod text;

#[derive(Parser)]
#[command(name = "homcoh", version, about = "Cohomology and deformations of Hom-associative and Hom-Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of an algebra or morphism file.
    Validate(ValidateArgs),
    /// Cohomology of an algebra with coefficients in itself or in a morphism's target.
    Cohomology(CohomologyArgs),
    /// Cohomology of the coupled complex of a morphism.
    MorphismCohomology(MorphismArgs),
    /// Verify, differentiate, obstruct or extend a formal deformation.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
    /// Run the randomized invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Algebra or morphism file, or builtin:NAME.
    file: String,
    #[command(flatten)]
    common: Common,
    /// Compare with published values for recognized fixtures.
    #[arg(long)]
    compare_paper: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleChoice {
    /// The algebra acting on itself (the default).
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum CocyclesChoice {
    Compatible,
    Unconstrained,
}

#[derive(Args)]
struct CohomologyArgs {
    /// Algebra file, or builtin:NAME.
    file: String,
    /// A single degree `N` or a range `A..B`.
    #[arg(long, value_parser = parse_degrees)]
    degree: RangeInclusive<usize>,
    /// Require the algebra to be Hom-Lie.
    #[arg(long)]
    lie: bool,
    /// Coefficients in the target of this morphism (whose source is FILE).
    #[arg(long, value_name = "MORPHISM")]
    values_in: Option<String>,
    #[arg(long, value_enum)]
    module: Option<ModuleChoice>,
    /// Whether degree-n cocycles must commute with the twists.
    #[arg(long, value_enum, default_value = "compatible")]
    cocycles: CocyclesChoice,
    /// Compute even when the input fails validation.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    compare_paper: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MorphismArgs {
    /// Morphism file, or builtin:NAME.
    file: String,
    #[arg(long, value_parser = parse_degrees)]
    degree: RangeInclusive<usize>,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    compare_paper: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DeformArgs {
    /// Deformation file, or builtin:NAME.
    file: String,
    /// Last order to check, or the order to extend to.
    #[arg(long)]
    to_order: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum DeformAction {
    /// Order-by-order verdicts for each defining equation.
    Check(DeformArgs),
    /// The first nonzero coefficient and its cocycle status.
    Infinitesimal(DeformArgs),
    /// The obstruction to the next order, its cocycle and coboundary status.
    Obstruction(DeformArgs),
    /// Extend order by order; prints the extended deformation file.
    Extend(DeformArgs),
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree '{t}'"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if a == 0 || b < a {
        return Err(format!("degree range '{s}' must satisfy 1 ≤ A ≤ B"));
    }
    Ok(a..=b)
}

/// Outcome of a command: what to print and how to exit.
struct Outcome {
    json: Value,
    text: String,
    success: bool,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::DimensionMismatch(_) | Error::ArityLimit { .. } | Error::Unsupported(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn here() -> &'static Path {
    Path::new("")
}

enum Object {
    Algebra(HomAlgebra),
    Morphism(HomMorphism),
}

/// An algebra or morphism file; morphism files are the ones with a `matrix`.
fn load_object(spec: &str) -> Result<Object, Error> {
    if let Some(name) = spec.strip_prefix(BUILTIN_PREFIX) {
        return match builtin(name)? {
            Builtin::Algebra(a) => Ok(Object::Algebra(a)),
            Builtin::Morphism(m) => Ok(Object::Morphism(m)),
            _ => Err(Error::Parse(format!("fixture '{name}' is neither an algebra nor a morphism"))),
        };
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    if value.get("matrix").is_some() {
        format::load_morphism(spec, here()).map(Object::Morphism)
    } else {
        format::load_algebra(spec, here()).map(Object::Algebra)
    }
}

fn comparisons(items: Vec<homcoh_core::compare::Expectation>) -> Vec<ItemResult> {
    items.iter().map(evaluate).collect()
}

fn attach_comparisons(out: &mut Outcome, results: &[ItemResult]) {
    out.json["comparisons"] = serde_json::to_value(results).expect("plain data");
    if results.is_empty() {
        out.text.push_str("no published values recorded for this input\n");
    }
    for r in results {
        out.text.push_str(&r.line());
        out.text.push('\n');
    }
}

fn cmd_validate(args: &ValidateArgs) -> CmdResult {
    let object = load_object(&args.file)?;
    let mut out = match &object {
        Object::Algebra(a) => {
            let r = a.validate();
            Outcome { text: text::validity(a, &r), json: report::validity_json(a, &r), success: r.is_valid }
        }
        Object::Morphism(phi) => {
            let r = phi.check();
            let ok = r.is_valid && phi.source.is_valid() && phi.target.is_valid();
            Outcome { text: text::morphism(phi, &r), json: report::morphism_report_json(phi, &r), success: ok }
        }
    };
    if args.compare_paper {
        let items = match &object {
            Object::Algebra(a) => items_for_algebra(a, CheckKind::Valid),
            Object::Morphism(phi) => items_for_morphism(phi, CheckKind::Valid),
        };
        attach_comparisons(&mut out, &comparisons(items));
    }
    Ok(out)
}

fn require_valid(a: &HomAlgebra, force: bool, what: &str) -> Result<(), Failure> {
    match a.validate().witness {
        Some(w) if !force => Err(Failure::Math(format!(
            "{what} '{}' is invalid: {} (use --force to compute anyway)",
            a.name,
            report::violation_text(&w, &a.basis, &a.basis)
        ))),
        _ => Ok(()),
    }
}

fn require_valid_morphism(phi: &HomMorphism, force: bool) -> Result<(), Failure> {
    require_valid(&phi.source, force, "source")?;
    require_valid(&phi.target, force, "target")?;
    let r = phi.check();
    match r.witness {
        Some(w) if !force => Err(Failure::Math(format!(
            "not a morphism: {} (use --force to compute anyway)",
            report::violation_text(&w, &phi.source.basis, &phi.target.basis)
        ))),
        _ => Ok(()),
    }
}

fn convention(c: CocyclesChoice) -> CocycleConvention {
    match c {
        CocyclesChoice::Compatible => CocycleConvention::Compatible,
        CocyclesChoice::Unconstrained => CocycleConvention::Unconstrained,
    }
}

fn in_range(e: &homcoh_core::compare::Expectation, range: &RangeInclusive<usize>, conv: CocycleConvention) -> bool {
    e.degree.is_some_and(|d| range.contains(&d)) && e.convention == conv
}

fn cmd_cohomology(args: &CohomologyArgs) -> CmdResult {
    let a = format::load_algebra(&args.file, here())?;
    if args.lie && a.kind != Kind::Lie {
        return Err(Failure::Input(format!("--lie given but '{}' is {}", a.name, a.kind)));
    }
    require_valid(&a, args.force, "algebra")?;
    let conv = convention(args.cocycles);
    let (summary, names_phi, items) = match &args.values_in {
        Some(m) => {
            if args.module.is_some() {
                return Err(Failure::Input("--values-in and --module are exclusive".into()));
            }
            let phi = format::load_morphism(m, here())?;
            if phi.source.kind != a.kind || phi.source.mul != a.mul || phi.source.alpha != a.alpha {
                return Err(Failure::Input("the morphism's source differs from the algebra".into()));
            }
            require_valid_morphism(&phi, args.force)?;
            let s = compute_cohomology_with(&ComplexSpec::with_values_in(&phi), args.degree.clone(), conv)?;
            let items = items_for_morphism(&phi, CheckKind::ValuesIn);
            (s, Some(phi), items)
        }
        None => {
            let s = compute_cohomology_with(&ComplexSpec::for_algebra(&a), args.degree.clone(), conv)?;
            (s, None, items_for_algebra(&a, CheckKind::Cohomology))
        }
    };
    let names = match &names_phi {
        Some(phi) => Names::values_in(phi),
        None => Names::algebra(&a),
    };
    let mut out = Outcome {
        text: text::summary(&summary, names),
        json: json!({"input": a.name, "complex": report::summary_json(&summary, names, true)}),
        success: true,
    };
    if args.compare_paper {
        let items = items.into_iter().filter(|e| in_range(e, &args.degree, conv)).collect();
        attach_comparisons(&mut out, &comparisons(items));
    }
    Ok(out)
}

fn cmd_morphism_cohomology(args: &MorphismArgs) -> CmdResult {
    let phi = format::load_morphism(&args.file, here())?;
    require_valid_morphism(&phi, args.force)?;
    let conv = CocycleConvention::Compatible;
    let coupled = compute_cohomology_with(&ComplexSpec::for_morphism(&phi), args.degree.clone(), conv)?;
    let third = compute_cohomology_with(&ComplexSpec::with_values_in(&phi), args.degree.clone(), conv)?;
    let mut text = String::from("coupled complex\n");
    text.push_str(&text::summary(&coupled, Names::morphism(&phi)));
    text.push_str("third component (values in the target)\n");
    text.push_str(&text::summary(&third, Names::values_in(&phi)));
    let mut products = Vec::new();
    for n in args.degree.clone() {
        let p = product_comparison(&phi, n)?;
        text.push_str(&format!(
            "product formula, degree {n}: direct {} vs {} + {} + {} = {} ({})\n",
            p.direct,
            p.h_source,
            p.h_target,
            p.h_cross,
            p.product,
            if p.agrees { "agrees" } else { "differs" }
        ));
        products.push(report::product_comparison_json(&p));
    }
    let mut out = Outcome {
        text,
        json: json!({
            "coupled": report::summary_json(&coupled, Names::morphism(&phi), false),
            "third_component": report::summary_json(&third, Names::values_in(&phi), true),
            "product_comparison": products,
        }),
        success: true,
    };
    if args.compare_paper {
        let mut items = items_for_morphism(&phi, CheckKind::MorphismCohomology);
        items.extend(items_for_morphism(&phi, CheckKind::ValuesIn));
        let items = items.into_iter().filter(|e| in_range(e, &args.degree, conv)).collect();
        attach_comparisons(&mut out, &comparisons(items));
    }
    Ok(out)
}

fn names_of(d: &Deformation) -> Names<'_> {
    match d {
        Deformation::Algebra(fd) => Names::algebra(&fd.base),
        Deformation::Morphism(md) => Names::morphism(&md.phi),
    }
}

fn cmd_deform(action: &DeformAction) -> CmdResult {
    let load = |args: &DeformArgs| format::load_deformation(&args.file, here());
    match action {
        DeformAction::Check(args) => {
            let d = load(args)?;
            let (r, phi, base) = match &d {
                Deformation::Algebra(fd) => (check_algebra_deformation(fd, args.to_order)?, None, &fd.base),
                Deformation::Morphism(md) => {
                    (check_morphism_deformation(md, args.to_order)?, Some(&md.phi), &md.phi.source)
                }
            };
            Ok(Outcome {
                text: text::deformation_report(&r, phi, base),
                json: report::deformation_report_json(&r, phi, base),
                success: r.ok(),
            })
        }
        DeformAction::Infinitesimal(args) => {
            let d = load(args)?;
            let x = match &d {
                Deformation::Algebra(fd) => infinitesimal_algebra(fd)?,
                Deformation::Morphism(md) => infinitesimal(md)?,
            };
            let names = names_of(&d);
            Ok(Outcome { text: text::infinitesimal(&x, names), json: report::infinitesimal_json(&x, names), success: true })
        }
        DeformAction::Obstruction(args) => {
            let d = load(args)?;
            let o = match &d {
                Deformation::Algebra(fd) => obstruction_algebra(fd)?,
                Deformation::Morphism(md) => obstruction(md)?,
            };
            // Slots resting on invalid data are reported, not failed.
            let trusted_ok = o.slot_is_cocycle.iter().zip(&o.slot_trusted).all(|(&ok, &t)| ok || !t);
            let names = names_of(&d);
            Ok(Outcome { text: text::obstruction(&o, names), json: report::obstruction_json(&o, names), success: trusted_ok })
        }
        DeformAction::Extend(args) => extend(load(args)?, args.to_order),
    }
}

fn extend(mut d: Deformation, to_order: Option<usize>) -> CmdResult {
    let target = to_order.unwrap_or(d.order() + 1);
    if target <= d.order() {
        return Err(Failure::Input(format!("--to-order {target} does not exceed the current order {}", d.order())));
    }
    let mut steps = Vec::new();
    while d.order() < target {
        let (next, obstructed) = match &d {
            Deformation::Algebra(fd) => match extend_algebra_deformation(fd)? {
                Extension::Extended { deformation, report } => (Some((Deformation::Algebra(deformation), report)), None),
                Extension::Obstructed { order, obstruction } => (None, Some((order, obstruction))),
            },
            Deformation::Morphism(md) => match extend_deformation(md)? {
                Extension::Extended { deformation, report } => (Some((Deformation::Morphism(deformation), report)), None),
                Extension::Obstructed { order, obstruction } => (None, Some((order, obstruction))),
            },
        };
        if let Some((order, ob)) = obstructed {
            let names = names_of(&d);
            let mut text = format!("obstructed at order {order}: the obstruction is not a coboundary\n");
            text.push_str(&text::obstruction(&ob, names));
            return Ok(Outcome {
                json: json!({"extended_to": d.order(), "obstructed_at": order, "obstruction": report::obstruction_json(&ob, names), "steps": steps}),
                text,
                success: false,
            });
        }
        let (nd, r) = next.expect("one of the two branches is set");
        steps.push(json!({"order": nd.order(), "recheck_ok": r.ok()}));
        if !r.ok() {
            return Ok(Outcome {
                json: json!({"extended_to": nd.order(), "recheck_failed": true, "steps": steps}),
                text: format!("order-{} extension failed its re-check\n", nd.order()),
                success: false,
            });
        }
        d = nd;
    }
    let file = serde_json::to_value(DeformationFile::from_deformation(&d)).expect("plain data");
    Ok(Outcome {
        text: serde_json::to_string_pretty(&file).expect("plain data") + "\n",
        json: json!({"extended_to": d.order(), "steps": steps, "deformation": file}),
        success: true,
    })
}

fn cmd_selftest(args: &SelftestArgs) -> CmdResult {
    let r = run_suite(args.seed, SuiteSize::default());
    Ok(Outcome { text: text::suite(&r), json: serde_json::to_value(&r).expect("plain data"), success: r.ok() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, json) = match &cli.command {
        Command::Validate(a) => (cmd_validate(a), a.common.json),
        Command::Cohomology(a) => (cmd_cohomology(a), a.common.json),
        Command::MorphismCohomology(a) => (cmd_morphism_cohomology(a), a.common.json),
        Command::Deform { action } => {
            let json = match action {
                DeformAction::Check(a)
                | DeformAction::Infinitesimal(a)
                | DeformAction::Obstruction(a)
                | DeformAction::Extend(a) => a.common.json,
            };
            (cmd_deform(action), json)
        }
        Command::Selftest(a) => (cmd_selftest(a), a.common.json),
    };
    match result {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("plain data"));
            } else {
                print!("{}", out.text);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

//! `toric`: command-line access to fans, Picard groups, Cox rings, sheaves
//! and cohomology.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_core::charts::{compare_cox_toric, glue_check, sheaf_of, xi_equal, xi_equal_via_charts};
use toric_core::cohomology::{cohomology_report, serre_grothendieck_report, twist_grid};
use toric_core::graded::{cox_ring, irrelevant_ideal, saturate, CoxRing, GradedSubmodule};
use toric_core::io::{
    emit_report, fixture, fixture_names, parse_degree, parse_degree_list,
    parse_fan, parse_module_document, FanDocument, Format, RunReport,
};
use toric_core::lattice::{GroupElem, Subgroup};
use toric_core::picard::{
    build_diagram, index_string, picard_group, picard_via_polytopes, theorem_report, FanDiagram,
};
use toric_core::Error;

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Exact computations on rational fans and their Cox rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,
    /// Record wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fan properties, diagram, Picard group and the classification checks.
    Classify { fan: String },
    /// Picard group by cone intersections and by virtual polytopes.
    Picard { fan: String },
    /// Cox ring data: degrees, irrelevant ideal, degree-restricted monoid.
    Cox {
        fan: String,
        /// Generators of a big subgroup `B` (degrees `c₁:c₂:…`, comma separated).
        #[arg(long, allow_hyphen_values = true)]
        subgroup: Option<String>,
    },
    /// Chart monoids and the comparison with the toric charts.
    Charts { fan: String },
    /// Saturation of a submodule by the irrelevant ideal or by given generators.
    Saturate {
        fan: String,
        #[arg(long)]
        module: PathBuf,
        /// `irrelevant`, or polynomials separated by `;`.
        #[arg(long, default_value = "irrelevant")]
        ideal: String,
    },
    /// Whether two submodules define the same sheaf.
    SheafEq {
        fan: String,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Sheaf and local cohomology of `⊕ S(β_j)` twisted by `α`.
    Cohomology {
        fan: String,
        /// Shifts `β_j` (comma separated degrees).
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        shifts: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: String,
        /// Character box radius (default from the twist, or TORIC_BOX_RADIUS).
        #[arg(long = "box")]
        radius: Option<i64>,
    },
    /// Sheaf cohomology against local cohomology over a range of twists.
    SgVerify {
        fan: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        shifts: String,
        /// `lo..hi`, applied to every free coordinate.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long = "box")]
        radius: Option<i64>,
    },
    /// Lists the shipped example fans.
    Fixtures,
}

/// Failure with its exit code: 1 for a failed mathematical check or a
/// computation that could not finish, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CorrespondenceViolation(_)
            | Error::TheoremViolation { .. }
            | Error::Unsupported(_)
            | Error::IterationBound(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Loaded {
    doc: FanDocument,
    bytes: Vec<u8>,
}

/// Reads a fan file, falling back to a fixture name.
fn load_fan(arg: &str) -> Result<Loaded, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let bytes = std::fs::read(path).map_err(|e| usage(format!("{arg}: {e}")))?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| usage(format!("{arg}: {e}")))?;
        let parsed = parse_fan(&text).map_err(|e| usage(format!("{arg}: {e}")))?;
        for w in &parsed.warnings {
            eprintln!("warning: {arg}: {w}");
        }
        return Ok(Loaded {
            doc: parsed.document,
            bytes,
        });
    }
    let doc = fixture(arg).map_err(|_| usage(format!("{arg}: no such file or fixture")))?;
    let bytes = toric_core::io::emit_fan(&doc).into_bytes();
    Ok(Loaded { doc, bytes })
}

fn read_file(p: &Path) -> Result<(String, Vec<u8>), Failure> {
    let bytes = std::fs::read(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    Ok((text, bytes))
}

fn elem(x: &GroupElem) -> Value {
    json!(x.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({
        "generators": s.generators().iter().map(elem).collect::<Vec<_>>(),
        "index": index_string(s),
    })
}

fn diagram(doc: &FanDocument) -> Result<FanDiagram, Failure> {
    Ok(build_diagram(&doc.to_fan()?))
}

fn whole_ring(d: FanDiagram) -> Result<Arc<CoxRing>, Failure> {
    let d = Arc::new(d);
    let b = d.whole_group();
    Ok(Arc::new(cox_ring(d, b)?))
}

fn load_module(ring: &Arc<CoxRing>, p: &Path) -> Result<(GradedSubmodule, Vec<u8>), Failure> {
    let (text, bytes) = read_file(p)?;
    let doc = parse_module_document(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    let n = doc
        .to_submodule(ring)
        .map_err(|e| usage(format!("{}: {e}", p.display())))?;
    Ok((n, bytes))
}

fn module_json(n: &GradedSubmodule) -> Value {
    json!({
        "shifts": n.shifts().iter().map(elem).collect::<Vec<_>>(),
        "generators": n.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
        "groebner_basis": n.groebner().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
    })
}

fn parse_range(text: &str) -> Result<(i64, i64), Failure> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| usage(format!("range `{text}` is not of the form lo..hi")))?;
    let p = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| usage(format!("bad range bound `{s}`")))
    };
    Ok((p(lo)?, p(hi)?))
}

/// Result object, input bytes, and whether every check passed.
type Outcome = (Value, Vec<Vec<u8>>, bool);

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Fixtures => {
            let list: Vec<Value> = fixture_names()
                .into_iter()
                .map(|n| {
                    let d = fixture(n).expect("shipped fixtures parse");
                    json!({"name": n, "rays": d.rays.len(), "max_cones": d.max_cones.len()})
                })
                .collect();
            Ok((json!({ "fixtures": list }), vec![], true))
        }
        Command::Classify { fan } => {
            let l = load_fan(fan)?;
            let d = diagram(&l.doc)?;
            let pic = picard_group(&d);
            let th = theorem_report(&d);
            let ok = th.all_hold();
            let v = json!({
                "fan": d.fan().name(),
                "flags": d.fan().flags(),
                "class_group": d.group().structure_string(),
                "ray_degrees": d.alpha().iter().map(elem).collect::<Vec<_>>(),
                "picard": subgroup_json(&pic),
                "picard_group": pic.as_group().structure_string(),
                "checks": th,
            });
            Ok((v, vec![l.bytes], ok))
        }
        Command::Picard { fan } => {
            let l = load_fan(fan)?;
            let d = diagram(&l.doc)?;
            let pic = picard_group(&d);
            let pv = picard_via_polytopes(&d);
            let ok = pv.injective && pv.matches_intersection;
            let v = json!({
                "fan": d.fan().name(),
                "class_group": d.group().structure_string(),
                "intersection": subgroup_json(&pic),
                "polytopes": {
                    "group": pv.group.structure_string(),
                    "witness_images": pv.witness_images.iter().map(elem).collect::<Vec<_>>(),
                    "injective": pv.injective,
                    "image": subgroup_json(&pv.image),
                },
                "routes_agree": pv.matches_intersection,
            });
            Ok((v, vec![l.bytes], ok))
        }
        Command::Cox { fan, subgroup } => {
            let l = load_fan(fan)?;
            let d = Arc::new(diagram(&l.doc)?);
            let a = d.group().clone();
            let b = match subgroup {
                Some(g) => Subgroup::new(a.clone(), &parse_degree_list(&a, g)?),
                None => d.whole_group(),
            };
            let r = Arc::new(cox_ring(d.clone(), b.clone())?);
            let irr = irrelevant_ideal(&r)?;
            let v = json!({
                "fan": d.fan().name(),
                "grading_group": a.structure_string(),
                "subgroup": subgroup_json(&b),
                "variable_degrees": (0..r.nvars()).map(|i| elem(r.var_degree(i))).collect::<Vec<_>>(),
                "orders_mod_subgroup": r.orders_mod_b(),
                "restricted_monoid_generators": r.monoid_generators(),
                "irrelevant_ideal": irr.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
            });
            Ok((v, vec![l.bytes], true))
        }
        Command::Charts { fan } => {
            let l = load_fan(fan)?;
            let d = diagram(&l.doc)?;
            let rep = compare_cox_toric(&d)?;
            let glue = glue_check(&d)?;
            let ok = !matches!(
                rep.verdict,
                toric_core::charts::CoxToricVerdict::Mismatch { .. }
            ) && glue.iter().all(|g| g.holds());
            let v = json!({
                "fan": d.fan().name(),
                "comparison": rep,
                "gluing": glue,
            });
            Ok((v, vec![l.bytes], ok))
        }
        Command::Saturate { fan, module, ideal } => {
            let l = load_fan(fan)?;
            let r = whole_ring(diagram(&l.doc)?)?;
            let (n, mb) = load_module(&r, module)?;
            let i = if ideal == "irrelevant" {
                irrelevant_ideal(&r)?
            } else {
                let gens = ideal
                    .split(';')
                    .map(|s| r.poly().parse(s))
                    .collect::<Result<Vec<_>, _>>()?;
                GradedSubmodule::ideal(r.clone(), gens)?
            };
            let sat = saturate(&n, &i)?;
            let v = json!({
                "module": module_json(&n),
                "ideal": i.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>(),
                "saturation": module_json(&sat),
                "already_saturated": sat == n,
            });
            Ok((v, vec![l.bytes, mb, ideal.clone().into_bytes()], true))
        }
        Command::SheafEq { fan, a, b } => {
            let l = load_fan(fan)?;
            let r = whole_ring(diagram(&l.doc)?)?;
            let (n, na) = load_module(&r, a)?;
            let (h, nb) = load_module(&r, b)?;
            let equal = xi_equal(&n, &h)?;
            let via_charts = xi_equal_via_charts(&n, &h)?;
            if equal != via_charts {
                return Err(Error::CorrespondenceViolation(
                    "saturation and chart routes disagree".into(),
                )
                .into());
            }
            let sa = sheaf_of(&n)?;
            let sb = sheaf_of(&h)?;
            let v = json!({
                "verdict": if equal { "EQUAL" } else { "DIFFERENT" },
                "a": module_json(sa.representative()),
                "b": module_json(sb.representative()),
                "a_is_zero_sheaf": sa.is_zero(),
                "b_is_zero_sheaf": sb.is_zero(),
            });
            Ok((v, vec![l.bytes, na, nb], true))
        }
        Command::Cohomology {
            fan,
            shifts,
            twist,
            radius,
        } => {
            let l = load_fan(fan)?;
            let d = diagram(&l.doc)?;
            let a = d.group().clone();
            let sh = parse_degree_list(&a, shifts)?;
            let tw = parse_degree(&a, twist)?;
            let rep = cohomology_report(&d, &sh, &[tw], *radius)?;
            let ok = rep.d_squared_zero && rep.euler_consistent;
            let v = serde_json::to_value(&rep).expect("reports serialize");
            Ok((v, vec![l.bytes], ok))
        }
        Command::SgVerify {
            fan,
            shifts,
            range,
            radius,
        } => {
            let l = load_fan(fan)?;
            let d = diagram(&l.doc)?;
            let a = d.group().clone();
            let sh = parse_degree_list(&a, shifts)?;
            let (lo, hi) = parse_range(range)?;
            let twists = twist_grid(&d, lo, hi);
            let rep = serre_grothendieck_report(&d, &sh, &twists, *radius)?;
            let ok = rep.holds();
            let mut v = serde_json::to_value(&rep).expect("reports serialize");
            v["verdict"] = json!(if ok { "PASS" } else { "FAIL" });
            Ok((v, vec![l.bytes], ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::iter::once("toric".to_string())
        .chain(std::env::args().skip(1))
        .collect();
    let start = Instant::now();
    match run(&cli.command) {
        Ok((result, inputs, ok)) => {
            let refs: Vec<&[u8]> = inputs.iter().map(Vec::as_slice).collect();
            let mut report = RunReport::new(args, &refs, result);
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let format = match cli.format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Text => Format::Text,
            };
            print!("{}", emit_report(&report, format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

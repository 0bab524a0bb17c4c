use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use polyadjoint::adjoint::{adjoint_cone, adjoint_polytope};
use polyadjoint::arrangements::{is_simple, residual_arrangement};
use polyadjoint::canonical::canonical_form;
use polyadjoint::io::{
    parse_input_rows, CanonicalFormJson, ConeJson, PolynomialJson, PolytopeJson, ResidualJson,
};
use polyadjoint::linalg::Vector;
use polyadjoint::poly::{LinForm, Polynomial};
use polyadjoint::polytope::{
    cone_over, dual_cone, dual_polytope, translate_to_origin_interior, PointedCone, VPolytope,
};
use polyadjoint::verify::{all_passed, verify_cone, verify_polytope, Options};
use polyadjoint::Error;

#[derive(Parser, Debug)]
#[command(
    name = "polyadjoint",
    version,
    about = "Adjoints and canonical forms of polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for triangulation insertion orders and random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Translate a polytope by its vertex centroid first; the shift is reported.
    #[arg(long, global = true)]
    translate: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual polytope or dual cone.
    Dual { input: PathBuf },
    /// Normalized adjoint polynomial.
    Adjoint { input: PathBuf },
    /// Canonical form as numerator, facet factors and scalar.
    CanonicalForm { input: PathBuf },
    /// Supporting and residual arrangements.
    Residual { input: PathBuf },
    /// Run the verification suite.
    Verify {
        input: PathBuf,
        /// Number of random interior points for the oracle comparison.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Tolerance for the floating-point recursion cross-check.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, hide = true)]
        corrupt_numerator: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Verification(String),
    Parse(String),
    Precondition(String),
}

impl Failure {
    fn from_lib(e: Error) -> Self {
        match e {
            Error::OriginNotInterior => Failure::Precondition(format!("{e} (use --translate)")),
            Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

enum Object {
    Polytope(VPolytope, Option<Vector>),
    Cone(PointedCone),
}

fn load(path: &PathBuf, translate: bool) -> Result<Object, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    let (dim, rows, is_cone) =
        parse_input_rows(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    if is_cone {
        return Ok(Object::Cone(
            PointedCone::new(dim, rows).map_err(Failure::from_lib)?,
        ));
    }
    let p = VPolytope::new(dim, rows).map_err(Failure::from_lib)?;
    p.require_full_dimensional().map_err(Failure::from_lib)?;
    if translate {
        let (q, shift) = translate_to_origin_interior(&p);
        Ok(Object::Polytope(q, Some(shift)))
    } else {
        Ok(Object::Polytope(p, None))
    }
}

fn strings(v: &[polyadjoint::linalg::Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn with_shift(mut value: Value, shift: &Option<Vector>) -> Value {
    if let (Some(s), Value::Object(map)) = (shift, &mut value) {
        map.insert("translation".into(), json!(strings(s)));
    }
    value
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn shift_line(shift: &Option<Vector>) -> String {
    shift
        .as_ref()
        .map(|s| format!("translation: ({})\n", strings(s).join(", ")))
        .unwrap_or_default()
}

/// Constant first, as in `1 - x1 + 1/2*x2`.
fn linform_text(f: &LinForm) -> String {
    let mut out = f.constant.to_string();
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out.push_str(if c.is_negative() { " - " } else { " + " });
        let a = c.abs();
        if !a.is_one() {
            write!(out, "{a}*").unwrap();
        }
        write!(out, "x{}", i + 1).unwrap();
    }
    out
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let text = cli.format == Format::Text;
    let lib = Failure::from_lib;
    match &cli.command {
        Command::Dual { input } => match load(input, cli.translate)? {
            Object::Polytope(p, shift) => {
                let d = dual_polytope(&p).map_err(lib)?;
                if text {
                    let mut out = shift_line(&shift);
                    for v in d.vertices() {
                        writeln!(out, "({})", strings(v).join(", ")).unwrap();
                    }
                    Ok(out)
                } else {
                    Ok(json_text(with_shift(
                        to_value(PolytopeJson::from(&d)),
                        &shift,
                    )))
                }
            }
            Object::Cone(c) => {
                let d = dual_cone(&c).map_err(lib)?;
                if text {
                    let mut out = String::new();
                    for r in d.rays() {
                        writeln!(out, "({})", strings(r).join(", ")).unwrap();
                    }
                    Ok(out)
                } else {
                    Ok(json_text(to_value(ConeJson::from(&d))))
                }
            }
        },
        Command::Adjoint { input } => {
            let (poly, shift): (Polynomial, Option<Vector>) = match load(input, cli.translate)? {
                Object::Polytope(p, shift) => {
                    let a = adjoint_polytope(&p, cli.seed).map_err(lib)?;
                    (a.polynomial.homogenize_to(a.degree).normalized(), shift)
                }
                Object::Cone(c) => (adjoint_cone(&c, cli.seed).polynomial, None),
            };
            if text {
                Ok(format!("{}{}\n", shift_line(&shift), poly))
            } else {
                Ok(json_text(with_shift(
                    to_value(PolynomialJson::from(&poly)),
                    &shift,
                )))
            }
        }
        Command::CanonicalForm { input } => {
            let Object::Polytope(p, shift) = load(input, cli.translate)? else {
                return Err(Failure::Precondition(
                    "canonical-form expects a polytope file".into(),
                ));
            };
            let f = canonical_form(&p, cli.seed).map_err(lib)?;
            if text {
                let den: Vec<String> = f
                    .denominator_factors
                    .iter()
                    .map(|l| format!("({})", linform_text(l)))
                    .collect();
                Ok(format!(
                    "{}{} * ({}) / ({})\n",
                    shift_line(&shift),
                    f.calibration_scalar,
                    f.numerator.display_with_offset(1),
                    den.join(" * ")
                ))
            } else {
                Ok(json_text(with_shift(
                    to_value(CanonicalFormJson::from(&f)),
                    &shift,
                )))
            }
        }
        Command::Residual { input } => {
            let (c, shift) = match load(input, cli.translate)? {
                Object::Polytope(p, shift) => (cone_over(&p).map_err(lib)?, shift),
                Object::Cone(c) => (c, None),
            };
            let r = residual_arrangement(&c);
            let simple = is_simple(&c);
            if text {
                let mut out = shift_line(&shift);
                writeln!(out, "hyperplanes: {}", r.hyperplanes.len()).unwrap();
                for s in &r.subspaces {
                    let basis: Vec<String> = s
                        .basis
                        .iter()
                        .map(|b| format!("({})", strings(b).join(", ")))
                        .collect();
                    writeln!(
                        out,
                        "codim {} span {} from {:?}",
                        s.codim,
                        basis.join(" "),
                        s.from_hyperplanes
                    )
                    .unwrap();
                }
                writeln!(out, "simple: {simple}").unwrap();
                Ok(out)
            } else {
                Ok(json_text(with_shift(
                    to_value(ResidualJson::new(&r, simple)),
                    &shift,
                )))
            }
        }
        Command::Verify {
            input,
            points,
            tolerance,
            corrupt_numerator,
        } => {
            let opts = Options {
                seed: cli.seed,
                points: *points,
                tolerance: *tolerance,
                corrupt_numerator: *corrupt_numerator,
            };
            let (checks, shift) = match load(input, cli.translate)? {
                Object::Polytope(p, shift) => (verify_polytope(&p, &opts).map_err(lib)?, shift),
                Object::Cone(c) => (verify_cone(&c, &opts).map_err(lib)?, None),
            };
            let passed = all_passed(&checks);
            let out = if text {
                let mut out = shift_line(&shift);
                for c in &checks {
                    writeln!(out, "{} {}: {}", c.status, c.name, c.detail).unwrap();
                }
                out
            } else {
                let list: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({"name": c.name, "status": c.status.to_string(), "detail": c.detail}))
                    .collect();
                json_text(with_shift(
                    json!({"checks": list, "passed": passed}),
                    &shift,
                ))
            };
            if passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("valid json");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

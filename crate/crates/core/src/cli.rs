//! Command-line front end. Every command prints one canonical JSON document.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 for unreadable or malformed input, 3 when input parses but violates an
//! invariant (degenerate form, non-unitary R where one is required, ...).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::acceptance::{test_representations, Suite, CRITERIA};
use crate::catalog;
use crate::charring::{
    adams_twisted, cyclic_operation_char, exterior_power_char, lambda_series, sigma_series, verify_cyclic_identities,
    verify_exterior_powers, verify_lambda_ring, ClassFunction, MatrixRep,
};
use crate::classify::{enumerate, Options};
use crate::cyclotomic::CycScalar;
use crate::error::Error;
use crate::groups::FiniteGroup;
use crate::hopf::GATensor;
use crate::interchange::{
    catalog_to_json, class_function_from_json, class_function_to_json, datum_from_json, group_from_json, parse,
    rep_from_json, report_to_json, scalar_to_json, tensor_from_json, tensor_to_json, to_canonical_string,
};
use crate::rmatrix::{
    build_r, koszul_twist, markov_element, verify_markov_equation, verify_qt, verify_unitary, QTDatum,
};

#[derive(Parser, Debug)]
#[command(
    name = "qtriang",
    version,
    about = "Quasitriangular structures on group algebras, exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Where an R-matrix comes from.
#[derive(clap::Args, Debug, Clone)]
pub struct Source {
    /// Group JSON file, or the name of a bundled group.
    #[arg(long)]
    pub group: Option<String>,
    /// Classification datum JSON.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// R-matrix (arity-2 tensor) JSON.
    #[arg(long)]
    pub rmatrix: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate and verify every structure on a group.
    Classify {
        #[arg(long)]
        group: String,
        /// Only triangular (unitary) structures.
        #[arg(long)]
        triangular: bool,
    },
    /// Verify the quasitriangular identities of a supplied R-matrix.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Markov element of an R-matrix, and the Markov equation for a datum.
    Markov {
        #[command(flatten)]
        source: Source,
    },
    /// Twisted Adams operations; with `--p`, cyclic operations of an R-matrix.
    Adams {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Central involution twisting the operations (default: the Markov element, or 1).
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        /// Exponent k of ε = ζ_p^k.
        #[arg(long, default_value_t = 1)]
        eps: i64,
        /// Class function JSON (default: linear and small regular characters).
        #[arg(long)]
        character: Option<PathBuf>,
    },
    /// λ- and σ-operations from the twisted Adams operations, with λ-ring checks.
    Lambda {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        character: Option<PathBuf>,
    },
    /// Braided exterior powers compared with the λ-operations.
    Exterior {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Representation JSON (default: linear and small regular representations).
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// The twist relating a triangular structure to the Koszul sign rule.
    KoszulTwist {
        #[command(flatten)]
        source: Source,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Only these criteria (default: all).
        #[arg(long)]
        criterion: Vec<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Lib(Error::Parse(_)) => 2,
            Failure::Lib(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        if self.exit_code() == 2 {
            "parse"
        } else {
            "invariant"
        }
    }
}

type Outcome = std::result::Result<(bool, Value), Failure>;

/// Exit status and JSON report of one invocation.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub report: Value,
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(parse(&text)?)
}

/// A group JSON file, or a bundled group name.
fn load_group(arg: &str) -> std::result::Result<Arc<FiniteGroup>, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(group_from_json(&read_json(path)?)?)
    } else {
        Ok(catalog::group(arg)?)
    }
}

struct Loaded {
    group: Arc<FiniteGroup>,
    datum: Option<QTDatum>,
    r: Option<GATensor>,
}

fn load(src: &Source) -> std::result::Result<Loaded, Failure> {
    let explicit = src.group.as_deref().map(load_group).transpose()?;
    let datum = src
        .datum
        .as_deref()
        .map(|p| Ok::<_, Failure>(datum_from_json(&read_json(p)?, explicit.as_ref())?))
        .transpose()?;
    let r = match (&src.rmatrix, &datum) {
        (Some(p), _) => {
            let group = explicit.as_ref().or(datum.as_ref().map(|d| d.group()));
            Some(tensor_from_json(&read_json(p)?, group)?)
        }
        (None, Some(d)) => Some(build_r(d)),
        (None, None) => None,
    };
    let group = explicit
        .or_else(|| datum.as_ref().map(|d| d.group().clone()))
        .or_else(|| r.as_ref().map(|r| r.group().clone()))
        .ok_or_else(|| Failure::Input("one of --group, --datum or --rmatrix is required".into()))?;
    Ok(Loaded { group, datum, r })
}

fn require_r(l: &Loaded) -> std::result::Result<&GATensor, Failure> {
    l.r.as_ref()
        .ok_or_else(|| Failure::Input("--datum or --rmatrix is required".into()))
}

/// `--u`, else the Markov element of the R-matrix, else the identity.
fn twisting_element(l: &Loaded, u: Option<usize>) -> std::result::Result<usize, Failure> {
    if let Some(u) = u {
        return Ok(u);
    }
    match &l.r {
        Some(r) => {
            if !verify_unitary(r) {
                return Err(Error::NotUnitary.into());
            }
            Ok(markov_element(r)?
                .element()
                .ok_or_else(|| Error::Verification("Markov element is not grouplike".into()))?)
        }
        None => Ok(l.group.identity()),
    }
}

fn characters(l: &Loaded, path: Option<&Path>) -> std::result::Result<Vec<ClassFunction>, Failure> {
    match path {
        Some(p) => Ok(vec![class_function_from_json(&read_json(p)?, Some(&l.group))?]),
        None => Ok(test_representations(&l.group)
            .iter()
            .map(|(_, r)| r.character())
            .collect()),
    }
}

fn representations(l: &Loaded, path: Option<&Path>) -> std::result::Result<Vec<(String, MatrixRep)>, Failure> {
    match path {
        Some(p) => Ok(vec![("input".into(), rep_from_json(&read_json(p)?, Some(&l.group))?)]),
        None => Ok(test_representations(&l.group)),
    }
}

fn classify(group: &str, triangular: bool) -> Outcome {
    let g = load_group(group)?;
    let c = enumerate(&g, Options::new(triangular))?;
    Ok((c.all_verified(), catalog_to_json(&c)))
}

fn verify(src: &Source) -> Outcome {
    let l = load(src)?;
    let r = require_r(&l)?;
    let report = verify_qt(r)?;
    Ok((
        report.all_passed(),
        json!({
            "group": l.group.name(),
            "r": tensor_to_json(r),
            "verification": report_to_json(&report),
            "unitary": verify_unitary(r),
        }),
    ))
}

fn markov(src: &Source) -> Outcome {
    let l = load(src)?;
    let r = require_r(&l)?;
    let m = markov_element(r)?;
    let mut passed = m.report.all_passed();
    let mut out = json!({
        "group": l.group.name(),
        "u": tensor_to_json(&m.u),
        "u_flipped": tensor_to_json(&m.u_flipped),
        "element": m.element(),
        "verification": report_to_json(&m.report),
    });
    if let (Some(d), Some(u)) = (&l.datum, m.element()) {
        if d.is_triangular() {
            let ok = verify_markov_equation(d, u)?;
            passed &= ok;
            out["markov_equation"] = json!(ok);
        }
    }
    Ok((passed, out))
}

fn adams(src: &Source, n: u32, u: Option<usize>, p: Option<usize>, eps: i64, character: Option<&Path>) -> Outcome {
    let l = load(src)?;
    let u = twisting_element(&l, u)?;
    let chars = characters(&l, character)?;
    let results = chars
        .iter()
        .map(|x| {
            Ok(json!({
                "character": class_function_to_json(x),
                "adams": class_function_to_json(&adams_twisted(x, u, n)?),
            }))
        })
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    let mut out = json!({"group": l.group.name(), "u": u, "n": n, "results": results});
    let mut passed = true;
    if let Some(p) = p {
        let r = require_r(&l)?;
        let e = CycScalar::root_of_unity(p as u32, eps);
        let mut cyclic = Vec::new();
        for (label, rep) in representations(&l, None)? {
            let values = cyclic_operation_char(&rep, r, p, &e)?;
            let report = verify_cyclic_identities(&rep, r, p)?;
            passed &= report.all_passed();
            cyclic.push(json!({
                "representation": label,
                "qtrace": values.iter().map(|(z, v)| json!({"z": z, "value": scalar_to_json(v)})).collect::<Vec<_>>(),
                "verification": report_to_json(&report),
            }));
        }
        out["p"] = json!(p);
        out["eps"] = scalar_to_json(&e);
        out["cyclic"] = json!(cyclic);
    }
    Ok((passed, out))
}

fn lambda(src: &Source, n: usize, u: Option<usize>, character: Option<&Path>) -> Outcome {
    let l = load(src)?;
    let u = twisting_element(&l, u)?;
    let chars = characters(&l, character)?;
    let mut results = Vec::new();
    for x in &chars {
        let lam = lambda_series(x, n, u)?;
        let sigma = sigma_series(x, n, u)?;
        results.push(json!({
            "character": class_function_to_json(x),
            "lambda": lam.iter().map(class_function_to_json).collect::<Vec<_>>(),
            "sigma": sigma.iter().map(class_function_to_json).collect::<Vec<_>>(),
        }));
    }
    let report = verify_lambda_ring(&l.group, u, &chars, n)?;
    Ok((
        report.all_passed(),
        json!({"group": l.group.name(), "u": u, "n": n, "results": results, "verification": report_to_json(&report)}),
    ))
}

fn exterior(src: &Source, n: usize, rep: Option<&Path>) -> Outcome {
    let l = load(src)?;
    let r = require_r(&l)?;
    let mut passed = true;
    let mut results = Vec::new();
    for (label, rho) in representations(&l, rep)? {
        let report = verify_exterior_powers(&rho, r, n)?;
        passed &= report.all_passed();
        let powers = (0..=n)
            .map(|k| Ok(class_function_to_json(&exterior_power_char(&rho, r, k)?)))
            .collect::<std::result::Result<Vec<_>, Error>>();
        results.push(json!({
            "representation": label,
            "exterior_powers": powers.unwrap_or_default(),
            "verification": report_to_json(&report),
        }));
    }
    Ok((passed, json!({"group": l.group.name(), "n": n, "results": results})))
}

fn koszul(src: &Source) -> Outcome {
    let l = load(src)?;
    let d = l
        .datum
        .as_ref()
        .ok_or_else(|| Failure::Input("--datum is required".into()))?;
    let t = koszul_twist(d)?;
    Ok((
        t.report.all_passed(),
        json!({
            "group": l.group.name(),
            "u": t.u,
            "beta_u": t.beta_u.exps(),
            "gamma": t.gamma.exps(),
            "gamma_upper_triangular": t.upper_triangular,
            "r_u": tensor_to_json(&t.r_u),
            "f": tensor_to_json(&t.f),
            "verification": report_to_json(&t.report),
        }),
    ))
}

fn selftest(ids: &[u32]) -> Outcome {
    let suite = Suite::new();
    let wanted: Vec<u32> = if ids.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        ids.to_vec()
    };
    let mut results = Vec::new();
    for &id in &wanted {
        let r = suite
            .run(id)
            .ok_or_else(|| Failure::Input(format!("no acceptance criterion {id}")))?;
        eprintln!("{r}");
        results.push(r);
    }
    let passed = results.iter().all(|r| r.passed);
    let criteria: Vec<Value> = results
        .iter()
        .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
        .collect();
    Ok((passed, json!({"passed": passed, "criteria": criteria})))
}

// Depth-first search for the first `{"name", "passed": false}` object.
fn first_failed_check(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) => {
            if m.get("passed") == Some(&Value::Bool(false)) {
                if let Some(Value::String(n)) = m.get("name") {
                    return Some(n.clone());
                }
            }
            m.values().find_map(first_failed_check)
        }
        Value::Array(a) => a.iter().find_map(first_failed_check),
        _ => None,
    }
}

/// Executes a parsed command.
pub fn run(cli: &Cli) -> RunOutput {
    let outcome = match &cli.command {
        Command::Classify { group, triangular } => classify(group, *triangular),
        Command::Verify { source } => verify(source),
        Command::Markov { source } => markov(source),
        Command::Adams {
            source,
            n,
            u,
            p,
            eps,
            character,
        } => adams(source, *n, *u, *p, *eps, character.as_deref()),
        Command::Lambda {
            source,
            n,
            u,
            character,
        } => lambda(source, *n, *u, character.as_deref()),
        Command::Exterior { source, n, rep } => exterior(source, *n, rep.as_deref()),
        Command::KoszulTwist { source } => koszul(source),
        Command::Selftest { criterion } => selftest(criterion),
    };
    match outcome {
        Ok((passed, mut report)) => {
            report["passed"] = json!(passed);
            if !passed {
                let first = first_failed_check(&report).unwrap_or_else(|| "unnamed".into());
                report["error"] = json!({"kind": "check", "message": format!("check failed: {first}")});
            }
            RunOutput {
                code: if passed { 0 } else { 1 },
                report,
            }
        }
        Err(f) => RunOutput {
            code: f.exit_code(),
            report: json!({"error": {"kind": f.kind(), "message": f.to_string()}}),
        },
    }
}

/// Parses arguments, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    let text = to_canonical_string(&out.report);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    out.code
}

//! `torusforge`: maximal tori of `gl(n, q)` and `sl(n, q)` from the command line.
//!
//! Exit codes: 0 pass, 1 a mathematical check failed, 2 unsupported case,
//! 3 resource bound exceeded, 4 bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use torusforge::census::{census, Bounds, CensusOptions, CensusReport, DEFAULT_GL_BOUND, DEFAULT_SCAN_BOUND};
use torusforge::json::{matrix_to_json, subspace_from_json, torus_to_json};
use torusforge::sl::{intersect_sl, lift_to_gl, DEFAULT_IDEAL_SCAN_BOUND};
use torusforge::torus::{canonical_torus, canonicalize, certify_torus, is_maximal_torus, primitive_idempotents, CertificationFailure};
use torusforge::verify::{run_suite, Suite, VerifyConfig};
use torusforge::{field_of_order, Ambient, Error, Exec, PartitionType, Torus};

#[derive(Parser)]
#[command(name = "torusforge", version, about = "Construct, certify, classify and count maximal tori in gl(n,q) and sl(n,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest |GL(n,q)| that brute-force scans may visit.
    #[arg(long, global = true, env = "TORUSFORGE_BOUND_GL", default_value_t = DEFAULT_GL_BOUND)]
    bound_gl: u64,
    /// Largest element count for exhaustive element scans.
    #[arg(long, global = true)]
    bound_scan: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Enumerate,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Gl,
    Sl,
}

impl From<Algebra> for Ambient {
    fn from(a: Algebra) -> Self {
        match a {
            Algebra::Gl => Ambient::Gl,
            Algebra::Sl => Ambient::Sl,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count maximal tori.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Algebra::Gl)]
        algebra: Algebra,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// One row per conjugacy class: type, normalizer order, class size.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Algebra::Gl)]
        algebra: Algebra,
        /// Also compute normalizer orders by brute force.
        #[arg(long)]
        verify: bool,
    },
    /// Build, certify or canonicalize a single torus.
    Torus {
        #[command(subcommand)]
        action: TorusAction,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Subcommand)]
enum TorusAction {
    /// Emit the canonical torus of a type.
    Build {
        #[arg(long = "type")]
        ty: PartitionType,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Algebra::Gl)]
        algebra: Algebra,
    },
    /// Certify a subspace read from a JSON file and report its type.
    Check {
        file: PathBuf,
        /// Overrides the file's "ambient" field.
        #[arg(long, value_enum)]
        algebra: Option<Algebra>,
    },
    /// Emit a conjugating matrix and the canonical form of a maximal torus.
    Canonicalize {
        file: PathBuf,
        #[arg(long, value_enum)]
        algebra: Option<Algebra>,
    },
}

enum Failure {
    Lib(Error),
    Check(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<CertificationFailure> for Failure {
    fn from(f: CertificationFailure) -> Self {
        let witness: Vec<Value> = f.witness.iter().map(matrix_to_json).collect();
        Failure::Check(format!("{} violated", f.axiom), json!({ "axiom": f.axiom.to_string(), "witness": witness }))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedSL2Char2 => 2,
        Error::BoundExceeded { .. } => 3,
        Error::NonPrimeCharacteristic(_)
        | Error::NotPrimePower(_)
        | Error::InvalidField(_)
        | Error::InvalidPartition(_)
        | Error::InvalidInput(_)
        | Error::DimensionMismatch(_)
        | Error::FieldMismatch
        | Error::ZeroPolynomial
        | Error::NotMember
        | Error::NotASubspace
        | Error::Json(_) => 4,
        _ => 1,
    }
}

fn emit(common: &Common, body: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, body).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
        }
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn census_csv(r: &CensusReport, with_brute: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["type", "normalizer", "class_size"];
    if with_brute {
        header.push("normalizer_bruteforce");
    }
    w.write_record(&header).expect("in-memory");
    for c in &r.classes {
        let ty: Vec<String> = c.ty.parts().iter().map(ToString::to_string).collect();
        let mut row = vec![ty.join(","), c.normalizer.to_string(), c.class_size.to_string()];
        if with_brute {
            row.push(c.normalizer_bruteforce.as_ref().map(ToString::to_string).unwrap_or_default());
        }
        w.write_record(&row).expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
}

fn census_text(r: &CensusReport) -> String {
    let mut s = format!("{}({},{})\n", r.algebra, r.n, r.q);
    s.push_str(&format!("{:<16} {:>24} {:>24}", "type", "normalizer", "class size"));
    let brute = r.classes.iter().any(|c| c.normalizer_bruteforce.is_some());
    let orbits = r.classes.iter().any(|c| c.orbit_size.is_some());
    if brute {
        s.push_str(&format!(" {:>24}", "normalizer (scan)"));
    }
    if orbits {
        s.push_str(&format!(" {:>24}", "orbit (scan)"));
    }
    s.push('\n');
    for c in &r.classes {
        s.push_str(&format!("{:<16} {:>24} {:>24}", c.ty.to_string(), c.normalizer, c.class_size));
        if let Some(b) = &c.normalizer_bruteforce {
            s.push_str(&format!(" {b:>24}"));
        }
        if let Some(o) = &c.orbit_size {
            s.push_str(&format!(" {o:>24}"));
        }
        s.push('\n');
    }
    s.push_str(&format!("total {}\n", r.total));
    if let Some(e) = &r.enumerated_total {
        s.push_str(&format!("enumerated {e}\n"));
    }
    s
}

fn bounds(common: &Common) -> Bounds {
    Bounds { gl: common.bound_gl, scan: common.bound_scan.unwrap_or(DEFAULT_SCAN_BOUND) }
}

fn run_census(common: &Common, n: usize, q: u64, algebra: Algebra, enumerate: bool, verify: bool) -> Result<(), Failure> {
    let opts = CensusOptions { enumerate, verify_normalizers: verify, bounds: bounds(common), exec: Exec::Parallel };
    let report = census(n, q, algebra.into(), &opts)?;
    let body = match common.format {
        Format::Json => pretty(&report),
        Format::Csv => census_csv(&report, verify),
        Format::Text => census_text(&report),
    };
    emit(common, &body)?;
    let failures = report.failures();
    if let Some(first) = failures.first() {
        return Err(Failure::Check(first.clone(), json!({ "failures": failures })));
    }
    Ok(())
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_torus(path: &Path, algebra: Option<Algebra>) -> Result<Torus, Failure> {
    let v = read_json(path)?;
    let ambient = match algebra {
        Some(a) => a.into(),
        None => torusforge::json::ambient_of(&v)?,
    };
    let s = subspace_from_json(&v)?;
    Ok(certify_torus(&s, ambient)?)
}

/// The gl torus whose conjugacy data describes `t`.
fn gl_form(t: &Torus) -> Result<Torus, Error> {
    match t.ambient() {
        Ambient::Gl => Ok(t.clone()),
        Ambient::Sl => lift_to_gl(t),
    }
}

fn torus_text(v: &Value) -> String {
    let mut s = String::new();
    if let Some(obj) = v.as_object() {
        for (k, val) in obj {
            if k == "field" || k == "basis" || k == "idempotents" || k == "canonical" || k == "canonicalizer" {
                continue;
            }
            s.push_str(&format!("{k}: {val}\n"));
        }
        for key in ["basis", "idempotents"] {
            if let Some(list) = obj.get(key).and_then(Value::as_array) {
                s.push_str(&format!("{key}:\n"));
                for m in list {
                    s.push_str(&format!("  {}\n", m["rows"]));
                }
            }
        }
        if let Some(u) = obj.get("canonicalizer") {
            s.push_str(&format!("canonicalizer: {}\n", u["rows"]));
        }
    }
    s
}

fn emit_value(common: &Common, v: &Value) -> Result<(), Failure> {
    let body = match common.format {
        Format::Json => pretty(v),
        Format::Text | Format::Csv => torus_text(v),
    };
    emit(common, &body)
}

fn torus_cmd(common: &Common, action: &TorusAction) -> Result<(), Failure> {
    match action {
        TorusAction::Build { ty, q, algebra } => {
            let field = field_of_order(*q)?;
            let t = canonical_torus(ty, &field, (*algebra).into())?;
            if t.ambient() == Ambient::Gl {
                primitive_idempotents(&t)?;
            }
            emit_value(common, &torus_to_json(&t))
        }
        TorusAction::Check { file, algebra } => {
            let t = load_torus(file, *algebra)?;
            let mut v = json!({ "certified": true, "ambient": t.ambient(), "dim": t.dim(), "t3_mode": t.t3_mode() });
            let maximal = is_maximal_torus(&t)?;
            v["maximal"] = json!(maximal);
            if maximal {
                let gl = gl_form(&t)?;
                let (u, ty) = canonicalize(&gl)?;
                v["type"] = json!(ty);
                v["canonicalizer"] = matrix_to_json(&u);
            }
            emit_value(common, &v)
        }
        TorusAction::Canonicalize { file, algebra } => {
            let t = load_torus(file, *algebra)?;
            if !is_maximal_torus(&t)? {
                return Err(Error::NotMaximal(format!("dimension {} in {}({})", t.dim(), t.ambient(), t.n())).into());
            }
            let gl = gl_form(&t)?;
            let (u, ty) = canonicalize(&gl)?;
            let mut canonical = canonical_torus(&ty, t.field(), Ambient::Gl)?;
            if t.ambient() == Ambient::Sl {
                canonical = intersect_sl(&canonical)?;
            } else {
                primitive_idempotents(&canonical)?;
            }
            let v = json!({ "type": ty, "canonicalizer": matrix_to_json(&u), "canonical": torus_to_json(&canonical) });
            emit_value(common, &v)
        }
    }
}

fn verify_cmd(common: &Common, suite: &str, n: Option<usize>, q: Option<u64>, n_max: Option<usize>) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let cfg = VerifyConfig {
        n,
        q,
        n_max,
        bounds: bounds(common),
        scan_bound: common.bound_scan.unwrap_or(DEFAULT_IDEAL_SCAN_BOUND),
        seed: common.seed,
        exec: Exec::Parallel,
    };
    let report = run_suite(suite, &cfg)?;
    let passed = report.passed();
    let body = match common.format {
        Format::Json => pretty(&json!({ "suite": suite.name(), "passed": passed, "checks": report.checks })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "check", "passed", "detail"]).expect("in-memory");
            for c in &report.checks {
                w.write_record([c.suite, &c.name, if c.passed { "true" } else { "false" }, &c.detail]).expect("in-memory");
            }
            String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
        }
        Format::Text => report
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                match c.detail.is_empty() {
                    true => format!("{status} {} {}\n", c.suite, c.name),
                    false => format!("{status} {} {}: {}\n", c.suite, c.name, c.detail),
                }
            })
            .collect(),
    };
    emit(common, &body)?;
    match report.first_failure() {
        Some(c) => Err(Failure::Check(format!("{} {}", c.suite, c.name), serde_json::to_value(c).expect("serializable"))),
        None => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Count { n, q, algebra, method } => run_census(common, *n, *q, *algebra, *method != Method::Formula, false),
        Command::Classes { n, q, algebra, verify } => run_census(common, *n, *q, *algebra, false, *verify),
        Command::Torus { action } => torus_cmd(common, action),
        Command::Verify { suite, n, q, n_max } => verify_cmd(common, suite, *n, *q, *n_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let failure = match run(&cli) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(Failure::Lib(Error::Certification(f))) => Failure::from(*f),
        Err(f) => f,
    };
    match failure {
        Failure::Lib(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Failure::Check(msg, witness) => {
            eprintln!("check failed: {msg}\n{}", pretty(&witness).trim_end());
            ExitCode::from(1)
        }
    }
}

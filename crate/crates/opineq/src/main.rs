//! Command-line front end: run verification suites, compute scalar
//! constants, run limit studies and tightness scans, and emit JSON/CSV
//! reports.
//!
//! Exit codes: 0 when no check fails, 1 when any check fails (or a scan
//! cell shows a violation), 2 on usage or configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use opineq::constants::{
    gamma_p, k_mond_pecaric, kantorovich_k, l_constant, ratio_c, xi_psi, FourPointBounds,
    RatioBounds, SandwichBounds,
};
use opineq::funcs::MonotoneFunctionId;
use opineq::hermitian::TolerancePolicy;
use opineq::report::{ReportDocument, ReportFormat};
use opineq::suite::{run_limit_study, run_suite, tightness_scan, SuitePlan};
use opineq::{OpIneqError, Result};

#[derive(Parser)]
#[command(name = "opineq", version, about = "Seeded verification of operator mean inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over seeded random matrix trials.
    Verify(VerifyArgs),
    /// Evaluate one of the scalar constants and print it as JSON.
    Constants(ConstantsArgs),
    /// Run the p -> 0+ limit study for the normed Golden-Thompson bound.
    Limit(LimitArgs),
    /// Scan a norm-valued check for the largest observed lhs/rhs ratio.
    Scan(ScanArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check (overrides --checks).
    #[arg(long)]
    suite: bool,
    /// Comma-separated check ids; default is every check.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Explicit weight list; values outside a check's domain are recorded
    /// as NotApplicable.
    #[arg(long = "v", value_delimiter = ',')]
    v_list: Vec<f64>,
    /// Explicit power list.
    #[arg(long = "p", value_delimiter = ',')]
    p_list: Vec<f64>,
    /// Norm tokens, e.g. schatten:2, schatten:inf, kyfan:3.
    #[arg(long = "norm", value_delimiter = ',')]
    norms: Vec<String>,
    /// Mean tokens, e.g. geometric:v=0.5 (the weight is replaced by the
    /// trial's v; only the kind matters here).
    #[arg(long = "mean", value_delimiter = ',')]
    means: Vec<String>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    tol_rel: Option<f64>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// JSON plan file; command-line flags override its fields.
    #[arg(long)]
    plan: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// One of: K, C, xi-psi, L, gamma, K-mp.
    name: String,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long = "M")]
    big_m: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long = "M1")]
    big_m1: Option<f64>,
    #[arg(long = "M2")]
    big_m2: Option<f64>,
    /// Catalog function token for K-mp, e.g. invpow:1.
    #[arg(long)]
    f: Option<String>,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "v", value_delimiter = ',')]
    v_list: Vec<f64>,
    /// Strictly descending powers approaching 0.
    #[arg(long = "p", value_delimiter = ',', default_values_t = vec![1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001])]
    p_list: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct ScanArgs {
    /// A norm-valued check id.
    #[arg(long)]
    check: String,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    dims: Vec<usize>,
    #[arg(long = "v", value_delimiter = ',', default_values_t = vec![1.0, 1.5, 2.0])]
    v_list: Vec<f64>,
    #[arg(long = "p", value_delimiter = ',', default_values_t = vec![1.5, 2.0])]
    p_list: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    trials_per_cell: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<ReportFormat> {
    match s {
        "json" => Ok(ReportFormat::Json),
        "csv" => Ok(ReportFormat::Csv),
        other => Err(OpIneqError::InvalidParameter(format!(
            "format must be json or csv, got `{other}`"
        ))),
    }
}

fn emit(doc: &ReportDocument, out: &Option<PathBuf>, format: ReportFormat) -> Result<()> {
    match out {
        Some(path) => doc.emit(format, path),
        None => {
            let body = match format {
                ReportFormat::Json => doc.to_json_pretty(),
                ReportFormat::Csv => doc.to_csv()?,
            };
            println!("{body}");
            Ok(())
        }
    }
}

fn build_plan(args: &VerifyArgs) -> Result<SuitePlan> {
    let mut plan = match &args.plan {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| OpIneqError::IoFailure(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| OpIneqError::InvalidParameter(format!("bad plan file: {e}")))?
        }
        None => SuitePlan::default(),
    };
    if args.suite {
        plan.checks = vec![];
    } else if !args.checks.is_empty() {
        plan.checks = args.checks.clone();
    }
    if !args.dims.is_empty() {
        plan.dims = args.dims.clone();
    }
    if let Some(t) = args.trials {
        plan.trials = t;
    }
    if let Some(s) = args.seed {
        plan.seed = s;
    }
    if !args.v_list.is_empty() {
        plan.v_list = Some(args.v_list.clone());
    }
    if !args.p_list.is_empty() {
        plan.p_list = Some(args.p_list.clone());
    }
    if !args.norms.is_empty() {
        plan.norms = Some(args.norms.clone());
    }
    if !args.means.is_empty() {
        plan.means = Some(args.means.clone());
    }
    if let Some(t) = args.tol_abs {
        plan.tol_abs = t;
    }
    if let Some(t) = args.tol_rel {
        plan.tol_rel = t;
    }
    Ok(plan)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let format = parse_format(&args.format)?;
    let plan = build_plan(args)?;
    let resolved = plan.resolve()?;
    let results = run_suite(&resolved)?;
    let doc = ReportDocument::new(serde_json::to_value(&plan).expect("plan serializes"), results);
    let failures = doc.total_failures();
    emit(&doc, &args.out, format)?;
    Ok(failures == 0)
}

fn require(name: &str, value: Option<f64>) -> Result<f64> {
    value.ok_or_else(|| OpIneqError::InvalidParameter(format!("missing required flag --{name}")))
}

fn cmd_constants(args: &ConstantsArgs) -> Result<bool> {
    let (params, value): (serde_json::Value, serde_json::Value) = match args.name.as_str() {
        "K" => {
            let (h, v) = (require("h", args.h)?, require("v", args.v)?);
            (
                serde_json::json!({"h": h, "v": v}),
                serde_json::json!(kantorovich_k(h, v)?),
            )
        }
        "C" => {
            let (m, big_m, v) = (
                require("m", args.m)?,
                require("M", args.big_m)?,
                require("v", args.v)?,
            );
            (
                serde_json::json!({"m": m, "M": big_m, "v": v}),
                serde_json::json!(ratio_c(m, big_m, v)?),
            )
        }
        "xi-psi" => {
            let (s, t, v) = (
                require("s", args.s)?,
                require("t", args.t)?,
                require("v", args.v)?,
            );
            let (xi, psi) = xi_psi(&RatioBounds::new(s, t)?, v);
            (
                serde_json::json!({"s": s, "t": t, "v": v}),
                serde_json::json!([xi, psi]),
            )
        }
        "L" => {
            let (m, big_m, v) = (
                require("m", args.m)?,
                require("M", args.big_m)?,
                require("v", args.v)?,
            );
            (
                serde_json::json!({"m": m, "M": big_m, "v": v}),
                serde_json::json!(l_constant(&SandwichBounds::new(m, big_m)?, v)?),
            )
        }
        "gamma" => {
            let bounds = FourPointBounds::new(
                require("m2", args.m2)?,
                require("m1", args.m1)?,
                require("M1", args.big_m1)?,
                require("M2", args.big_m2)?,
            )?;
            let (p, v) = (require("p", args.p)?, require("v", args.v)?);
            (
                serde_json::json!({
                    "m2": bounds.m2, "m1": bounds.m1, "M1": bounds.big_m1, "M2": bounds.big_m2,
                    "p": p, "v": v
                }),
                serde_json::json!(gamma_p(&bounds, p, v)?),
            )
        }
        "K-mp" => {
            let token = args.f.as_deref().ok_or_else(|| {
                OpIneqError::InvalidParameter("missing required flag --f".into())
            })?;
            let f = MonotoneFunctionId::from_str(token)?;
            let bounds = SandwichBounds::new(require("m", args.m)?, require("M", args.big_m)?)?;
            let k = k_mond_pecaric(|t| f.eval(t).expect("t in [m,M]"), &bounds)?;
            (
                serde_json::json!({"f": token, "m": bounds.m, "M": bounds.big_m}),
                serde_json::json!(k),
            )
        }
        other => {
            return Err(OpIneqError::InvalidParameter(format!(
                "unknown constant `{other}`; expected one of K, C, xi-psi, L, gamma, K-mp"
            )))
        }
    };
    let line = serde_json::json!({"name": args.name, "params": params, "value": value});
    println!("{line}");
    Ok(true)
}

fn cmd_limit(args: &LimitArgs) -> Result<bool> {
    let format = parse_format(&args.format)?;
    let v_list = if args.v_list.is_empty() {
        None
    } else {
        Some(args.v_list.as_slice())
    };
    let results = run_limit_study(
        &args.dims,
        args.trials,
        args.seed,
        v_list,
        &args.p_list,
        &TolerancePolicy::default(),
    )?;
    let plan = serde_json::json!({
        "study": "limit36",
        "dims": args.dims,
        "trials": args.trials,
        "seed": args.seed,
        "v_list": args.v_list,
        "p_list": args.p_list,
    });
    let doc = ReportDocument::new(plan, results);
    let failures = doc.total_failures();
    emit(&doc, &args.out, format)?;
    Ok(failures == 0)
}

fn cmd_scan(args: &ScanArgs) -> Result<bool> {
    let cells = tightness_scan(
        &args.check,
        &args.dims,
        &args.v_list,
        &args.p_list,
        args.trials_per_cell,
        args.seed,
        &TolerancePolicy::default(),
    )?;
    let body = serde_json::to_string_pretty(&cells).expect("scan cells serialize");
    match &args.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| OpIneqError::IoFailure(format!("{}: {e}", path.display())))?,
        None => println!("{body}"),
    }
    Ok(cells.iter().all(|c| !c.violation))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Scan(args) => cmd_scan(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end: argument parsing, rendering and exit codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 I/O
//! error, 4 oracle non-convergence.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::closedform::fidelity_trace;
use crate::error::Error;
use crate::estimation::{find_extrema, min_measurements};
use crate::fockoracle::OracleConfig;
use crate::format::{round_sig9, sig9};
use crate::geometry::{
    metric_closed, metric_numeric, scalar_curvature_closed, scalar_curvature_numeric,
};
use crate::scan;
use crate::states::StateParams;
use crate::verify::{self, Grid, VerificationReport, VerifyOptions, GRID_MAX_CUTOFF};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_ORACLE: u8 = 4;

/// Largest accepted `beta`; beyond it thermal weights underflow.
pub const MAX_BETA: f64 = 700.0;

const NMIN_CAVEAT: &str =
    "N >= 1/ds^2 is an infinitesimal bound; for finite separations it is indicative only";
const DEGENERACY_NOTE: &str =
    "coordinate degeneracy at r=0: g_tt = 0 and theta is not a coordinate";

#[derive(Debug, Parser)]
#[command(
    name = "buresgeo",
    version,
    about = "Bures geometry of squeezed thermal states"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity trace and Bures distance between two states.
    Distance(PairArgs),
    /// Statistical-distance metric at a state.
    Metric(MetricArgs),
    /// Scalar curvature at a given beta, or its extrema over a range.
    Curvature(CurvatureArgs),
    /// Table of curvature and metric components over a beta range.
    Scan(ScanArgs),
    /// Compare the closed forms against the Fock oracle and numeric checks.
    Verify(VerifyArgs),
    /// Lower bound on the number of measurements separating two states.
    Nmin(NminArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First state, e.g. "beta=2,r=0.5,theta=0".
    #[arg(long, value_parser = parse_state)]
    pub s1: StateParams,
    /// Second state.
    #[arg(long, value_parser = parse_state)]
    pub s2: StateParams,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// State, e.g. "beta=2,r=0.3,theta=0.1".
    #[arg(long, value_parser = parse_state)]
    pub s: StateParams,
    /// Also compute the finite-difference Hessian of D_B^2.
    #[arg(long)]
    pub numeric: bool,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    /// Inverse temperature.
    #[arg(long, required_unless_present = "extrema")]
    pub beta: Option<f64>,
    /// Also compute the curvature numerically from the metric.
    #[arg(long)]
    pub numeric: bool,
    /// Squeeze magnitude at which the numeric curvature is probed.
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// List stationary points and end behavior on [beta-min, beta-max].
    #[arg(long, conflicts_with = "beta")]
    pub extrema: bool,
    #[arg(long, default_value_t = 0.1)]
    pub beta_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub beta_max: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub beta_min: f64,
    #[arg(long)]
    pub beta_max: f64,
    #[arg(long)]
    pub steps: usize,
    /// Squeeze magnitude used for the g_rr and g_tt columns.
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Small,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = GridArg::Full)]
    pub grid: GridArg,
    /// Tolerance for closed-form versus oracle fidelity.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Largest Fock cutoff; overrides BURESGEO_MAX_CUTOFF.
    #[arg(long)]
    pub max_cutoff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NminArgs {
    #[arg(long, value_parser = parse_state, required_unless_present = "ds_sq")]
    pub s1: Option<StateParams>,
    #[arg(long, value_parser = parse_state, required_unless_present = "ds_sq")]
    pub s2: Option<StateParams>,
    /// Use this squared distance instead of computing one.
    #[arg(long, conflicts_with_all = ["s1", "s2"])]
    pub ds_sq: Option<f64>,
}

/// Rendered output plus the exit code it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Advisory lines for the error stream.
    pub stderr: String,
    pub code: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Overflow(_) => EXIT_INPUT,
            Error::Cutoff(_) | Error::Convergence(_) | Error::NegativeEigenvalue { .. } => {
                EXIT_ORACLE
            }
            Error::Internal(_) => EXIT_VERIFY_FAILED,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `"beta=B,r=R,theta=T"`; `r` and `theta` default to 0.
pub fn parse_state(spec: &str) -> Result<StateParams, String> {
    let mut beta = None;
    let mut r = None;
    let mut theta = None;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{part}'"))?;
        let key = key.trim().to_ascii_lowercase();
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("{key}: '{}' is not a number", value.trim()))?;
        let slot = match key.as_str() {
            "beta" => &mut beta,
            "r" => &mut r,
            "theta" => &mut theta,
            _ => return Err(format!("unknown key '{key}' (expected beta, r, theta)")),
        };
        if slot.replace(value).is_some() {
            return Err(format!("{key} given twice"));
        }
    }
    let beta = beta.ok_or("beta is required")?;
    if beta > MAX_BETA {
        return Err(format!("beta must not exceed {MAX_BETA}"));
    }
    StateParams::new(beta, r.unwrap_or(0.0), theta.unwrap_or(0.0)).map_err(|e| e.to_string())
}

/// Runs a parsed command, producing rendered output.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Distance(a) => distance(a, f),
        Command::Metric(a) => metric(a, f),
        Command::Curvature(a) => curvature(a, f),
        Command::Scan(a) => scan_cmd(a, f),
        Command::Verify(a) => verify_cmd(a, f),
        Command::Nmin(a) => nmin(a, f),
    }
}

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

/// Named scalars rendered as `key: value` lines, a one-row CSV, or a JSON object.
fn render_fields(fields: &[(&str, f64)], notes: &[String], format: Format) -> Outcome {
    let mut stderr = String::new();
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            for (k, v) in fields {
                let _ = writeln!(s, "{k}: {}", sig9(*v));
            }
            for n in notes {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let vals: Vec<String> = fields.iter().map(|(_, v)| sig9(*v)).collect();
            for n in notes {
                let _ = writeln!(stderr, "note: {n}");
            }
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        Format::Json => {
            let mut obj = Map::new();
            for (k, v) in fields {
                obj.insert(k.to_string(), json_num(*v));
            }
            if !notes.is_empty() {
                obj.insert("notes".into(), json!(notes));
            }
            to_json(&Value::Object(obj))
        }
    };
    Outcome {
        stdout,
        stderr,
        code: EXIT_OK,
    }
}

fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig9(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn distance(a: &PairArgs, format: Format) -> Result<Outcome, CliError> {
    let r = fidelity_trace(&a.s1, &a.s2)?;
    Ok(render_fields(
        &[
            ("fidelity_trace", r.fidelity_trace),
            ("bures_distance_sq", r.bures_distance_sq),
            ("bures_distance", r.bures_distance()),
            ("bures_angle", r.bures_angle()),
            ("y_factor", r.y_factor),
        ],
        &[],
        format,
    ))
}

fn metric(a: &MetricArgs, format: Format) -> Result<Outcome, CliError> {
    let g = metric_closed(&a.s)?;
    let mut fields = vec![("g_bb", g.g_bb), ("g_rr", g.g_rr), ("g_tt", g.g_tt)];
    let mut notes = Vec::new();
    if g.theta_degenerate() {
        notes.push(DEGENERACY_NOTE.to_string());
    }
    if g.g_bb_underflow {
        notes.push("g_bb underflows to 0 at this beta".to_string());
    }
    if a.numeric {
        let n = metric_numeric(&a.s, a.step)?;
        let nd = n.diagonal();
        let cd = g.diagonal();
        let mut dev: f64 = 0.0;
        for k in 0..3 {
            if k == 2 && n.theta_degenerate {
                continue;
            }
            dev = dev.max(((nd[k] - cd[k]) / cd[k]).abs());
        }
        fields.extend([
            ("numeric_g_bb", nd[0]),
            ("numeric_g_rr", nd[1]),
            ("numeric_g_tt", nd[2]),
            ("max_off_diagonal", n.max_off_diagonal()),
            ("max_rel_deviation", dev),
        ]);
        if n.theta_degenerate && !g.theta_degenerate() {
            notes.push("r is below the probe threshold; theta row skipped".to_string());
        }
    }
    Ok(render_fields(&fields, &notes, format))
}

fn curvature(a: &CurvatureArgs, format: Format) -> Result<Outcome, CliError> {
    if a.extrema {
        let records = find_extrema(a.beta_min, a.beta_max, 1e-12)?;
        let stdout = match format {
            Format::Json => {
                let rows: Vec<Value> = records
                    .iter()
                    .map(|r| json!({"beta": json_num(r.beta), "r_scalar": json_num(r.r_scalar), "kind": r.kind}))
                    .collect();
                to_json(&Value::Array(rows))
            }
            Format::Csv | Format::Text => {
                let mut s = String::from("beta,r_scalar,kind\n");
                for r in &records {
                    let kind = serde_json::to_value(r.kind).expect("kind serializes");
                    let _ = writeln!(
                        s,
                        "{},{},{}",
                        sig9(r.beta),
                        sig9(r.r_scalar),
                        kind.as_str().unwrap_or("")
                    );
                }
                s
            }
        };
        return ok(stdout);
    }
    let beta = a.beta.ok_or_else(|| input_error("--beta is required"))?;
    if beta > MAX_BETA {
        return Err(input_error(format!("beta must not exceed {MAX_BETA}")));
    }
    let c = scalar_curvature_closed(beta)?;
    let mut fields = vec![
        ("beta", beta),
        ("r_scalar", c.r_scalar),
        ("abs_r", c.r_scalar.abs()),
    ];
    if a.numeric {
        let s = StateParams::new(beta, a.r, 0.0)?;
        let n = scalar_curvature_numeric(&s, a.step)?;
        fields.push(("numeric_r_scalar", n.r_scalar));
        fields.push((
            "rel_deviation",
            ((n.r_scalar - c.r_scalar) / c.r_scalar).abs(),
        ));
    }
    Ok(render_fields(&fields, &[], format))
}

fn scan_cmd(a: &ScanArgs, format: Format) -> Result<Outcome, CliError> {
    if a.beta_max > MAX_BETA {
        return Err(input_error(format!("beta-max must not exceed {MAX_BETA}")));
    }
    let rows = scan::scan(a.beta_min, a.beta_max, a.steps, a.r)?;
    ok(match format {
        Format::Json => scan::to_json(&rows),
        Format::Csv | Format::Text => scan::to_csv(&rows),
    })
}

fn verify_cmd(a: &VerifyArgs, format: Format) -> Result<Outcome, CliError> {
    let mut opts = VerifyOptions {
        grid: match a.grid {
            GridArg::Small => Grid::Small,
            GridArg::Full => Grid::Full,
        },
        tol: a.tol,
        ..VerifyOptions::default()
    };
    opts.oracle = OracleConfig {
        max_cutoff: GRID_MAX_CUTOFF,
        ..opts.oracle
    }
    .with_env()?;
    if let Some(m) = a.max_cutoff {
        opts.oracle.max_cutoff = m;
    }
    let report = verify::run(&opts)?;
    let stdout = render_report(&report, format);
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
    })
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let cases: Vec<Value> = report
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "closed_value": json_num(c.closed_value),
                        "oracle_value": json_num(c.oracle_value),
                        "abs_diff": json_num(c.abs_diff),
                        "tolerance": json_num(c.tolerance),
                        "cutoff_used": c.cutoff_used,
                        "pass": c.pass,
                    })
                })
                .collect();
            to_json(&json!({
                "cases": cases,
                "summary": report.summary,
                "errata": report.errata,
            }))
        }
        Format::Csv => {
            let mut s = String::from(
                "name,closed_value,oracle_value,abs_diff,tolerance,cutoff_used,pass\n",
            );
            for c in &report.cases {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{},{},{}",
                    c.name.replace('"', "\"\""),
                    sig9(c.closed_value),
                    sig9(c.oracle_value),
                    sig9(c.abs_diff),
                    sig9(c.tolerance),
                    c.cutoff_used.map(|d| d.to_string()).unwrap_or_default(),
                    c.pass
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let cutoff = c.cutoff_used.map(|d| format!(" D={d}")).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{} {}: closed={} check={} diff={} tol={}{cutoff}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    sig9(c.closed_value),
                    sig9(c.oracle_value),
                    sig9(c.abs_diff),
                    sig9(c.tolerance),
                );
            }
            let sm = report.summary;
            let _ = writeln!(
                s,
                "summary: {} total, {} passed, {} failed",
                sm.total, sm.passed, sm.failed
            );
            for e in &report.errata {
                let _ = writeln!(s, "erratum: {e}");
            }
            s
        }
    }
}

fn nmin(a: &NminArgs, format: Format) -> Result<Outcome, CliError> {
    let ds_sq = match (a.ds_sq, &a.s1, &a.s2) {
        (Some(d), _, _) => d,
        (None, Some(s1), Some(s2)) => fidelity_trace(s1, s2)?.bures_distance_sq,
        _ => return Err(input_error("need --s1 and --s2, or --ds-sq")),
    };
    if ds_sq == 0.0 {
        return Err(input_error(
            "states are identical (ds^2 = 0); the bound is undefined",
        ));
    }
    let n = min_measurements(ds_sq)?;
    let stdout = match format {
        Format::Text => format!("n_min: {n}\nds_sq: {}\nnote: {NMIN_CAVEAT}\n", sig9(ds_sq)),
        Format::Csv => format!("n_min,ds_sq\n{n},{}\n", sig9(ds_sq)),
        Format::Json => {
            to_json(&json!({"n_min": n, "ds_sq": json_num(ds_sq), "caveat": NMIN_CAVEAT}))
        }
    };
    Ok(Outcome {
        stdout,
        stderr: if format == Format::Csv {
            format!("note: {NMIN_CAVEAT}\n")
        } else {
            String::new()
        },
        code: EXIT_OK,
    })
}

/// Executes `cli`, writes its output and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    eprint!("{}", outcome.stderr);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.stdout)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.stdout.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    };
    match written {
        Ok(()) => outcome.code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    }
}

//! `fdeg`: formal degrees of discrete series of GL(md) and checks of the
//! identities behind them.

mod config;
mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use fdeg_core::contour::{self, ContourError, QuadratureSpec};
use fdeg_core::degree;
use fdeg_core::fault::Fault;
use fdeg_core::model::{self, DegSigma, QMode, RawParams, SetupParams};
use fdeg_core::mu;
use fdeg_core::qcas::{Rational, VarId};
use fdeg_core::report::CheckReport;
use fdeg_core::verify::{self, Grid, Suite};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "fdeg", version, about = "Formal degrees of discrete series of p-adic GL(n)")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Read further flags from a key=value file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    /// Corrupt a residue normalizer on purpose.
    #[arg(long, global = true, value_name = "FAULT")]
    inject_fault: Option<Fault>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Formal degree of the discrete series.
    Degree(DegreeArgs),
    /// Run a symbolic identity suite over a parameter grid.
    Verify(VerifyArgs),
    /// Compare the shifted contour integral of mu with the residue data.
    Contour(ContourArgs),
    /// Print mu or one of its level ratios.
    Mu(MuArgs),
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[arg(long)]
    m: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    a: i64,
    /// A rational, a decimal, or "symbolic".
    #[arg(long, default_value = "symbolic")]
    q: String,
    /// A rational or "symbolic".
    #[arg(long, default_value = "symbolic")]
    deg_sigma: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = Suite::from_str)]
    kind: Suite,
    #[arg(long, default_value_t = 6)]
    d_max: u32,
    /// Comma-separated; defaults to every divisor of m.
    #[arg(long, value_delimiter = ',')]
    t_set: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    a_set: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,6")]
    m_set: Vec<u32>,
}

#[derive(Args, Debug)]
struct ContourArgs {
    #[arg(long)]
    m: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    a: i64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 256)]
    nodes: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Real parts R_1,..,R_{d-1}; defaults to r_l + t/2 + 1/4.
    #[arg(long, value_delimiter = ',')]
    shift: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct MuArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    a: i64,
    /// Block size; mu does not depend on it. Defaults to t.
    #[arg(long)]
    m: Option<i64>,
    /// Print the closed level ratio at this level instead of mu.
    #[arg(long)]
    level: Option<u32>,
}

/// An error that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("not a rational: {s}"))
}

fn parse_q(s: &str) -> Result<QMode, String> {
    if s == "symbolic" {
        return Ok(QMode::Symbolic);
    }
    if let Ok(r) = parse_rational(s) {
        return Ok(QMode::Exact(r));
    }
    s.parse::<f64>().map(QMode::Float).map_err(|_| format!("not a value of q: {s}"))
}

fn parse_deg(s: &str) -> Result<DegSigma, String> {
    if s == "symbolic" {
        return Ok(DegSigma::Symbolic);
    }
    parse_rational(s).map(DegSigma::Exact)
}

fn report_warnings(p: &SetupParams) {
    for w in p.warnings() {
        eprintln!("warning: {w}");
    }
}

fn print_checks(checks: &[CheckReport]) {
    for c in checks {
        println!("{c}");
    }
}

fn exit_for(checks: &[CheckReport]) -> u8 {
    if checks.iter().all(CheckReport::passed) {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_degree(args: &DegreeArgs, json: bool, fault: Option<Fault>) -> Result<u8, Usage> {
    let raw = RawParams {
        q: parse_q(&args.q)?,
        deg_sigma: parse_deg(&args.deg_sigma)?,
        ..RawParams::new(args.m, args.d, args.t, args.a)
    };
    let p = model::validate(raw)?;
    report_warnings(&p);
    let result = degree::closed_form_degree(&p);
    let checks = vec![degree::verify_theorem(&p, fault)];
    if json {
        let mut r = Map::new();
        r.insert("factored".into(), Value::String(result.to_string()));
        r.insert("log_grade".into(), Value::Number(result.factored.log_grade().into()));
        r.insert("numeric".into(), result.numeric.map_or(Value::Null, output::num));
        if let Some(x) = &result.exact {
            r.insert("exact".into(), Value::String(x.to_string()));
        }
        println!("{}", output::render(&output::document(output::params(&p), Value::Object(r), &checks)));
    } else {
        println!("{result}");
        if let Some(x) = &result.exact {
            println!("exact = {x}");
        }
        if let Some(x) = result.numeric {
            println!("numeric = {x:.16e}");
        }
        if !checks[0].passed() {
            print_checks(&checks);
        }
    }
    Ok(exit_for(&checks))
}

fn cmd_verify(args: &VerifyArgs, json: bool, fault: Option<Fault>) -> Result<u8, Usage> {
    let grid = Grid {
        d_max: args.d_max,
        m_set: args.m_set.clone(),
        t_set: args.t_set.clone(),
        a_set: args.a_set.clone(),
    };
    grid.validate()?;
    let checks = verify::run_suite(args.kind, &grid, fault);
    if checks.is_empty() {
        return Err(Usage("grid has no valid cases".into()));
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if json {
        let set = |xs: &[u32]| Value::Array(xs.iter().map(|&x| output::int(x)).collect());
        let mut params = Map::new();
        params.insert("suite".into(), Value::String(args.kind.to_string()));
        params.insert("d_max".into(), output::int(grid.d_max));
        params.insert("m_set".into(), set(&grid.m_set));
        params.insert("t_set".into(), grid.t_set.as_deref().map_or(Value::Null, set));
        params.insert("a_set".into(), set(&grid.a_set));
        let mut r = Map::new();
        r.insert("cases".into(), Value::Number(checks.len().into()));
        r.insert("failed".into(), Value::Number(failed.into()));
        println!("{}", output::render(&output::document(Value::Object(params), Value::Object(r), &checks)));
    } else {
        print_checks(&checks);
        println!("{} {}: {} cases, {} failed", args.kind, if failed == 0 { "pass" } else { "fail" }, checks.len(), failed);
    }
    Ok(exit_for(&checks))
}

fn cmd_contour(args: &ContourArgs, json: bool, fault: Option<Fault>) -> Result<u8, Usage> {
    let raw = RawParams {
        q: QMode::Float(args.q),
        ..RawParams::new(args.m, args.d, args.t, args.a)
    };
    let p = model::validate(raw)?;
    report_warnings(&p);
    let mut spec = QuadratureSpec::new(args.nodes, args.q, args.tol);
    if let Some(s) = &args.shift {
        spec = spec.with_shift(s.clone());
    }
    let report = match contour::verify_residue_decomposition(&p, &spec, fault) {
        Ok(r) => r,
        Err(e @ (ContourError::InvalidSpec(_) | ContourError::ShiftOnPole { .. } | ContourError::OutsideChamber { .. })) => {
            return Err(e.into())
        }
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_FAIL);
        }
    };
    let checks = vec![report.check.clone()];
    if json {
        let mut r = Map::new();
        r.insert("factored".into(), Value::Null);
        r.insert("log_grade".into(), Value::Number(0.into()));
        r.insert("numeric".into(), output::num(report.lhs.re));
        r.insert("rhs".into(), output::num(report.rhs.re));
        r.insert("terms".into(), Value::Array(report.terms.iter().map(|z| output::num(z.re)).collect()));
        r.insert("rel_error".into(), output::num(report.rel_error));
        println!("{}", output::render(&output::document(output::params(&p), Value::Object(r), &checks)));
    } else {
        println!("lhs = {:.16e}", report.lhs.re);
        println!("rhs = {:.16e}", report.rhs.re);
        for (i, z) in report.terms.iter().enumerate() {
            println!("  level {} = {:.16e}", i + 1, z.re);
        }
        println!("relative error = {:.3e}", report.rel_error);
        print_checks(&checks);
    }
    Ok(exit_for(&checks))
}

fn cmd_mu(args: &MuArgs, json: bool) -> Result<u8, Usage> {
    let p = SetupParams::new(args.m.unwrap_or(args.t), args.d, args.t, args.a)?;
    let f = match args.level {
        Some(l) => mu::mu_level_ratio_closed(&p, l, VarId(l.saturating_sub(1)))?,
        None => mu::mu_in_z(&p)?,
    };
    if json {
        let mut r = Map::new();
        r.insert("factored".into(), Value::String(f.to_string()));
        r.insert("log_grade".into(), Value::Number(f.log_grade().into()));
        r.insert("numeric".into(), Value::Null);
        println!("{}", output::render(&output::document(output::params(&p), Value::Object(r), &[])));
    } else {
        println!("{f}");
    }
    Ok(0)
}

fn main() -> ExitCode {
    let args = match config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = Cli::parse_from(args);
    let outcome = match &cli.command {
        Command::Degree(a) => cmd_degree(a, cli.json, cli.inject_fault),
        Command::Verify(a) => cmd_verify(a, cli.json, cli.inject_fault),
        Command::Contour(a) => cmd_contour(a, cli.json, cli.inject_fault),
        Command::Mu(a) => cmd_mu(a, cli.json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

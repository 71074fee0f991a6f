//! `varmin`: reproducible runs of the minimizer, the closed-form checks, the
//! inequality catalog and the isoperimetric limit, with JSON reports.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "varmin", version, about = "Minimize ∫(u'²−u²)/(∫|u|)² and check the structure of the minimizer")]
struct Cli {
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral descent for the minimum of J.
    Minimize(MinimizeArgs),
    /// Check the closed-form minimizer and its Euler–Lagrange structure.
    VerifyClosedForm(VerifyArgs),
    /// Multipliers, nodal partition and interval relations of a series read from JSON.
    Euler(EulerArgs),
    /// Grid-certify one catalog inequality, or `all`.
    Certify(CertifyArgs),
    /// Richardson limit of the isoperimetric quotient along εv.
    Shape(ShapeArgs),
    /// Aggregate earlier JSON reports.
    Report(ReportArgs),
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive number")),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct MinimizeArgs {
    #[arg(long, default_value_t = 256, value_parser = positive_usize)]
    pub modes: usize,
    #[arg(long, default_value_t = 2048, value_parser = positive_usize)]
    pub grid: usize,
    #[arg(long, default_value_t = 8, value_parser = positive_usize)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance on |J − expect|.
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub tol: f64,
    #[arg(long, default_value_t = varmin_core::MINIMUM_VALUE)]
    pub expect: f64,
    /// Tolerance on nodal lengths and multipliers of the minimizer.
    #[arg(long, default_value_t = 1e-2, value_parser = positive_f64)]
    pub structure_tol: f64,
    #[arg(long, default_value_t = 20_000, value_parser = positive_usize)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
    pub grad_tol: f64,
    #[arg(long)]
    pub no_warm_start: bool,
    /// Write the normalized minimizer as series JSON.
    #[arg(long, value_name = "PATH")]
    pub save_series: Option<PathBuf>,
    /// Dump the minimizer on the grid as `theta,value` CSV.
    #[arg(long, value_name = "PATH")]
    pub samples: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Quadrature panels over one period.
    #[arg(long, default_value_t = 4096, value_parser = positive_usize)]
    pub grid: usize,
    /// Truncation used for the spectral part of the pipeline.
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub modes: usize,
    #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct EulerArgs {
    /// Series JSON: {"max_mode": N, "cos": [a_0..a_N], "sin": [b_1..b_N]}.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_parser = positive_usize)]
    pub grid: Option<usize>,
    /// Tolerance on the interval relations.
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    /// Catalog id, or `all`.
    #[arg(long)]
    pub lemma: String,
    /// Grid step; defaults to each claim's own step.
    #[arg(long, value_parser = positive_f64)]
    pub step: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ShapeArgs {
    #[arg(long, default_value_t = 0.02, value_parser = positive_f64)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub modes: usize,
    #[arg(long, default_value_t = 4096, value_parser = positive_usize)]
    pub grid: usize,
    /// Perturbation direction as series JSON; the projected closed form by default.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    #[arg(required = true, value_name = "REPORT")]
    pub inputs: Vec<PathBuf>,
}

/// Usage-level failure: bad input files, unknown claims, invalid parameters.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var("VARMIN_THREADS") else { return Ok(()) };
    let n = positive_usize(raw.trim()).map_err(|e| UsageError(format!("VARMIN_THREADS={raw}: {e}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, UsageError> {
    configure_threads()?;
    match &cli.command {
        Command::Minimize(a) => commands::minimize(a),
        Command::VerifyClosedForm(a) => commands::verify_closed_form(a),
        Command::Euler(a) => commands::euler(a),
        Command::Certify(a) => commands::certify(a),
        Command::Shape(a) => commands::shape(a),
        Command::Report(a) => commands::aggregate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = report.write(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        report.print_human();
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        for c in report.failing() {
            eprintln!("failed: {}", c.name);
        }
        ExitCode::from(1)
    }
}

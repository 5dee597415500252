//! `lab`: runs the minimal-denominator experiments and writes
//! `samples.csv`, `cdf.csv` and `manifest.json`.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 invalid input, 3 an
//! enumeration cap was exceeded (no files are left behind).

mod config;
mod output;
mod plot;
mod run;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use mindenom::par::{set_threads, Execution};

use config::{Experiment, RunArgs, RunConfig};
use plot::PlotArgs;

#[derive(Debug)]
pub enum LabError {
    Validation(String),
    Cap(String),
    Io(String),
    Mismatch(u64),
}

impl LabError {
    fn code(&self) -> u8 {
        match self {
            LabError::Mismatch(_) => 1,
            LabError::Validation(_) | LabError::Io(_) => 2,
            LabError::Cap(_) => 3,
        }
    }
}

impl std::fmt::Display for LabError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabError::Validation(m) => write!(f, "invalid input: {m}"),
            LabError::Cap(m) => write!(f, "enumeration cap exceeded: {m}"),
            LabError::Io(m) => write!(f, "i/o error: {m}"),
            LabError::Mismatch(k) => write!(f, "{k} oracle mismatches"),
        }
    }
}

impl From<mindenom::Error> for LabError {
    fn from(e: mindenom::Error) -> Self {
        match e {
            mindenom::Error::NotFound { .. } | mindenom::Error::EmptyCone { .. } => LabError::Cap(e.to_string()),
            other => LabError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lab", version, about = "Minimal denominators, thin-cone minima and their limit laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// sqrt(delta) q_min against the Haar cone minimum and the horocycle orbit
    #[command(name = "theorem-1.2")]
    Theorem12(RunArgs),
    /// delta^(m/(m+1)) Q^m at delta and delta/16
    #[command(name = "theorem-1.4")]
    Theorem14(RunArgs),
    /// delta^(m/(m+n)) Q^{m,n} at delta and delta/16
    #[command(name = "theorem-5.5")]
    Theorem55(RunArgs),
    /// sqrt(delta) Psi on sheared square-tiled surfaces
    #[command(name = "theorem-1.5")]
    Theorem15(RunArgs),
    /// Lattice point counts and the small-T law of the Haar sampler
    SiegelCheck(RunArgs),
    /// Exact cross-checks between the minimal-denominator computations
    OracleSuite(RunArgs),
    /// Overlay cdf.csv files as SVG and a merged CSV
    Plot(PlotArgs),
}

fn threads_from_env() -> Result<(), LabError> {
    match std::env::var("LAB_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| LabError::Validation(format!("LAB_THREADS must be a positive integer, got {v:?}")))?;
            set_threads(n)?;
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn experiment(experiment: Experiment, args: RunArgs) -> Result<(), LabError> {
    let config = RunConfig::resolve(experiment, args)?;
    let start = Instant::now();
    let outcome = run::run(&config, Execution::default())?;
    let wall = start.elapsed().as_secs_f64();
    output::write_run(&config, &outcome.series, &outcome.summary, wall)?;
    println!("{} -> {}", experiment.name(), config.out.display());
    println!("{}", serde_json::to_string_pretty(&outcome.summary).unwrap_or_default());
    if outcome.mismatches > 0 {
        return Err(LabError::Mismatch(outcome.mismatches));
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), LabError> {
    threads_from_env()?;
    match cli.command {
        Command::Theorem12(a) => experiment(Experiment::Theorem12, a),
        Command::Theorem14(a) => experiment(Experiment::Theorem14, a),
        Command::Theorem55(a) => experiment(Experiment::Theorem55, a),
        Command::Theorem15(a) => experiment(Experiment::Theorem15, a),
        Command::SiegelCheck(a) => experiment(Experiment::SiegelCheck, a),
        Command::OracleSuite(a) => experiment(Experiment::OracleSuite, a),
        Command::Plot(a) => plot::emit(&a),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(e.code())
        }
    }
}

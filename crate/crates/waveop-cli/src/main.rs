//! Command-line front end: verification suites, band-spectrum tables,
//! exact-diagonalization comparisons, and rotational-band reports.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! configuration errors.

mod commands;
mod config;
mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{OutputFormat, PartialConfig, RunConfig};
use output::Report;

#[derive(Parser)]
#[command(
    name = "waveop",
    version,
    about = "Wave-operator perturbation theory for deep radial potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cross-module verification suite and report residuals
    Verify(CommonArgs),
    /// Emit the band-spectrum coefficient table for one angular momentum
    Spectrum(CommonArgs),
    /// Compare the energy expansion against exact diagonalization
    Compare(CommonArgs),
    /// Rotational-band report across an angular-momentum range
    Bands(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Well depth V0 (default 1)
    #[arg(long)]
    v0: Option<f64>,
    /// Quadratic expansion coefficient alpha (default 1)
    #[arg(long)]
    alpha: Option<f64>,
    /// Quartic expansion coefficient beta (default 1)
    #[arg(long)]
    beta: Option<f64>,
    /// Mass mu (default 1)
    #[arg(long)]
    mu: Option<f64>,
    /// Reduced Planck constant (default 1)
    #[arg(long)]
    hbar: Option<f64>,
    /// Orbital angular momentum; lower end of the range for `bands` (default 0)
    #[arg(long)]
    l: Option<u32>,
    /// Upper end of the angular-momentum range, inclusive (`bands` only)
    #[arg(long)]
    l_max: Option<u32>,
    /// Ladder-basis dimension (default 40)
    #[arg(long)]
    dim: Option<usize>,
    /// Number of states reported (default 6)
    #[arg(long)]
    states: Option<usize>,
    /// Output format: csv or json (default csv)
    #[arg(long)]
    format: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized verification ensembles (default 42)
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key=value config file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Push a deliberately degenerate spectrum through the pipeline so the
    /// error path is exercised end to end (`verify` only)
    #[arg(long, default_value_t = false)]
    inject_degenerate: bool,
}

impl CommonArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            v0: self.v0,
            alpha: self.alpha,
            beta: self.beta,
            mu: self.mu,
            hbar: self.hbar,
            l: self.l,
            l_max: self.l_max,
            dim: self.dim,
            states: self.states,
            format: self.format.clone(),
            out: self.out.clone(),
            seed: self.seed,
        }
    }
}

fn emit(report: &Report, cfg: &RunConfig) -> std::io::Result<()> {
    let text = match cfg.format {
        OutputFormat::Csv => output::to_csv(report),
        OutputFormat::Json => output::to_json(report),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(text.as_bytes())
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Verify(a) => ("verify", a),
        Command::Spectrum(a) => ("spectrum", a),
        Command::Compare(a) => ("compare", a),
        Command::Bands(a) => ("bands", a),
    };
    let cfg = config::resolve(
        name,
        args.partial(),
        args.config.as_ref(),
        args.inject_degenerate,
    )
    .map_err(|e| e.to_string())?;

    let (report, failed) = match name {
        "verify" => {
            let report = verify::cmd_verify(&cfg);
            let failed = report.checks.iter().any(|c| !c.passed);
            (report, failed)
        }
        "spectrum" => (
            commands::cmd_spectrum(&cfg).map_err(|e| e.to_string())?,
            false,
        ),
        "compare" => (
            commands::cmd_compare(&cfg).map_err(|e| e.to_string())?,
            false,
        ),
        "bands" => (commands::cmd_bands(&cfg).map_err(|e| e.to_string())?, false),
        _ => unreachable!(),
    };
    emit(&report, &cfg).map_err(|e| format!("cannot write output: {}", e))?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{}", message);
            ExitCode::from(2)
        }
    }
}

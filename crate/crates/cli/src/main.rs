//! `fraclap`: configuration-driven runner for the fractional-Laplacian
//! verification experiments. Exit code 0 on PASS (or WARN), 1 on FAIL,
//! 2 on configuration errors.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fraclap_core::error::Error as CoreError;
use fraclap_core::harness::{run_experiment, ExperimentParams, Verdict, EXPERIMENTS};

use config::{ConfigError, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "fraclap", about = "Fractional Laplacian Dirichlet problem: experiments and reports", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single named experiment
    Run {
        /// Registered experiment name (see `fraclap list`)
        experiment: String,
        /// Fractional order s in (0,1)
        #[arg(long)]
        s: Option<f64>,
        /// Ambient dimension (1 or 2)
        #[arg(long)]
        n: Option<usize>,
        /// Grid size: power of two in [32, 4096]
        #[arg(long = "N")]
        n_cells: Option<usize>,
        /// Flat key=value config file; flags override file values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// json | csv | both
        #[arg(long)]
        format: Option<String>,
        /// Omit the timestamp field for byte-identical reports
        #[arg(long)]
        no_timestamp: bool,
    },
    /// List registered experiments with defaults
    List,
    /// Run every experiment with default parameters
    Suite {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        no_timestamp: bool,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> Result<ExitCode, ConfigError> {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for (name, description) in EXPERIMENTS {
                println!("{name:<24} {description}");
            }
            let d = ExperimentParams::default();
            println!("\ndefaults: s = {}, n = {}, N = {}", d.s, d.dim, d.n_cells);
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { experiment, s, n, n_cells, config, out, format, no_timestamp } => {
            let mut cfg = RunConfig { experiment, ..Default::default() };
            if let Some(path) = &config {
                let cli_experiment = std::mem::take(&mut cfg.experiment);
                cfg.apply_file(path)?;
                if !cli_experiment.is_empty() {
                    cfg.experiment = cli_experiment;
                }
            }
            if let Some(v) = s {
                cfg.s = v;
            }
            if let Some(v) = n {
                cfg.dim = v;
            }
            if let Some(v) = n_cells {
                cfg.n_cells = v;
            }
            if let Some(dir) = out {
                cfg.output_dir = dir;
            }
            if let Some(f) = &format {
                cfg.format = OutputFormat::parse(f)?;
            }
            cfg.timestamp = !no_timestamp;
            cfg.validate()?;

            let report = run_experiment(&cfg.experiment, &cfg.params()).map_err(map_core)?;
            let json = output::write_report(&report, &cfg.output_dir, cfg.format, cfg.timestamp)
                .map_err(|e| ConfigError(format!("cannot write report: {e}")))?;
            println!("{}", output::summary_line(&report));
            println!("report: {}", json.display());
            Ok(exit_for(report.verdict))
        }
        Command::Suite { out, format, no_timestamp } => {
            let out = out.unwrap_or_else(|| PathBuf::from("fraclap_out"));
            let format = match &format {
                Some(f) => OutputFormat::parse(f)?,
                None => OutputFormat::Both,
            };
            let mut worst = Verdict::Pass;
            println!("{:<24} verdict", "experiment");
            for (name, _) in EXPERIMENTS {
                let report =
                    run_experiment(name, &ExperimentParams::default()).map_err(map_core)?;
                output::write_report(&report, &out.join(name), format, !no_timestamp)
                    .map_err(|e| ConfigError(format!("cannot write report: {e}")))?;
                println!("{}", output::summary_line(&report));
                if report.verdict == Verdict::Fail {
                    worst = Verdict::Fail;
                } else if report.verdict == Verdict::Warn && worst == Verdict::Pass {
                    worst = Verdict::Warn;
                }
            }
            Ok(exit_for(worst))
        }
    }
}

/// Parameter-shaped core failures are configuration errors (exit 2); anything
/// else surfaces as a failed run (exit 1 path via Fail handling upstream).
fn map_core(e: CoreError) -> ConfigError {
    match e {
        CoreError::InvalidParameter(_) | CoreError::GridTooCoarse { .. } => {
            ConfigError(e.to_string())
        }
        other => ConfigError(format!("experiment failed: {other}")),
    }
}

fn exit_for(v: Verdict) -> ExitCode {
    match v {
        Verdict::Fail => ExitCode::from(1),
        Verdict::Pass | Verdict::Warn => ExitCode::SUCCESS,
    }
}

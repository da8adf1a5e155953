use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pdm_slater::Constants;
use pdm_slater_cli::{check, figures, load_config, run, CliError, RunConfig};

/// Semiclassical and exact Slater sums for position-dependent-mass Hamiltonians.
#[derive(Parser)]
#[command(name = "pdm-slater", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Opts {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (a directory for `figures`). CSV goes to stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum relative error accepted by `compare`; overrides the config.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Semiclassical Slater sum over the run grid.
    Semiclassical(Opts),
    /// Semiclassical local density of states at run.lambda.
    Density(Opts),
    /// Closed-form Slater sum of the builtin `pct` model.
    ExactPct(Opts),
    /// Slater sum from the discretized spectrum (one dimension).
    ExactGrid(Opts),
    /// Semiclassical against an exact oracle, with error columns.
    Compare(Opts),
    /// Write the mass-ratio and Slater-sum datasets for gamma = 0.6, 0.8, 1.0.
    Figures(Opts),
    /// Run the identity and property checks.
    Check(Opts),
}

fn config(opts: &Opts) -> Result<RunConfig, CliError> {
    let path = opts.config.as_deref().ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    load_config(path)
}

fn execute(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Semiclassical(o) => {
            let rows = run::run_semiclassical(&config(&o)?)?;
            run::semiclassical_table(&rows).write_to(o.out.as_deref())?;
        }
        Command::Density(o) => run::run_density(&config(&o)?)?.write_to(o.out.as_deref())?,
        Command::ExactPct(o) => run::run_exact_pct(&config(&o)?)?.write_to(o.out.as_deref())?,
        Command::ExactGrid(o) => run::run_exact_grid(&config(&o)?)?.write_to(o.out.as_deref())?,
        Command::Compare(o) => {
            let report = run::run_compare(&config(&o)?, o.tolerance)?;
            run::comparison_table(&report.rows).write_to(o.out.as_deref())?;
            let s = report.summary;
            eprintln!(
                "oracle {}: max abs err {:.6e}, max rel err {:.6e} at x = {} (beta = {})",
                report.oracle.name(),
                s.max_abs_err,
                s.max_rel_err,
                s.argmax_x,
                s.argmax_beta
            );
            if !report.within_tolerance() {
                eprintln!("tolerance {} exceeded", report.tolerance.unwrap_or_default());
                return Ok(false);
            }
        }
        Command::Figures(o) => {
            let constants = match &o.config {
                Some(_) => config(&o)?.constants(),
                None => Constants::default(),
            };
            let dir = o.out.unwrap_or_else(|| PathBuf::from("figures"));
            for p in figures::write_figures(Path::new(&dir), constants)? {
                eprintln!("wrote {}", p.display());
            }
        }
        Command::Check(_) => {
            let outcomes = check::run_all()?;
            for o in &outcomes {
                println!("{o}");
            }
            return Ok(outcomes.iter().all(|o| o.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

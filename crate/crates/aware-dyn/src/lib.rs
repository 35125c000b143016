//! Command-line front end for `aware-dyn-core`: scenario files, subcommands,
//! CSV outputs with run manifests, and matplotlib scripts for the figures.
//!
//! ```text
//! aware-dyn <subcommand> --config <path> --out <dir> [--seed <u64>]
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;

pub mod config;
pub mod error;
pub mod format;
pub mod manifest;
pub mod plot;
pub mod run;

pub use config::{parse_config, ConfigError, Model, ScenarioConfig, SolverSettings, Task};
pub use error::CliError;
pub use manifest::RunManifest;
pub use run::{run_subcommand, RunReport, Subcommand};

pub const THREADS_ENV: &str = "AWARE_DYN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "aware-dyn", version, about = "Equilibria, bifurcations and simulations of awareness-driven epidemic models")]
pub struct Cli {
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// Scenario file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    /// Seed for randomly drawn initial conditions.
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(parse_config(&text)?)
}

/// Caps the global rayon pool. A pool that already exists is left alone.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| ConfigError {
        line: None,
        key: Some(THREADS_ENV.into()),
        message: format!("expected a positive integer, got `{v}`"),
    })?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    configure_threads(std::env::var(THREADS_ENV).ok().as_deref())?;
    let config = load_config(&cli.config)?;
    run_subcommand(cli.subcommand, &config, &cli.out, cli.seed)
}

/// Parses arguments, runs, prints one diagnostic line and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            println!("{}", report.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

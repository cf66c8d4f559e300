//! `circle-sqm`: spectra, wavefunction samples and validation reports for the
//! singular oscillator and singular Coulomb systems on a circle.
//!
//! Exit codes: 0 success, 1 a validation check failed, 2 invalid configuration
//! or I/O failure.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Invalid parameters, flags or environment; also I/O errors.
    Config(String),
    /// The run completed but at least one check failed.
    Checks { failed: usize, total: usize },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Checks { .. } => 1,
            Failure::Config(_) => 2,
        }
    }
}

impl From<circle_sqm::Error> for Failure {
    fn from(e: circle_sqm::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Config(msg) => eprintln!("error: {msg}"),
                Failure::Checks { failed, total } => eprintln!("{failed} of {total} checks failed"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    config::init_thread_pool()?;
    commands::dispatch(cli.command)
}

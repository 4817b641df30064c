//! Command-line experiment harness over the `fqext` library.
//!
//! Every subcommand turns its flags into a [`Report`]: a list of flat
//! records carrying the inputs, the measured quantities, and a `pass`
//! column for each asserted bound. Exit status is 0 when every record
//! passes, 1 when some assertion fails, and 2 for usage or configuration
//! errors.

pub mod args;
pub mod commands;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use thiserror::Error;

pub use args::{Cli, Command};
pub use report::{Cell, Format, Record, Report};

/// Overrides the worker count; unset means one worker per core.
pub const THREADS_ENV: &str = "FQEXT_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fqext::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    commands::dispatch(&cli.command)
}

/// Writes `report` to the configured destination.
pub fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let out = cli.command.output();
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => report.write(out.format, io::stdout().lock())?,
    }
    Ok(())
}

pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

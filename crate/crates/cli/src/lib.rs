//! Library side of the `etcs` command-line tool.
//!
//! Each subcommand is a function that writes its report to a
//! [`std::io::Write`] and returns a [`CliError`] carrying the exit status on
//! failure, so the binary stays a thin argument parser.

mod commands;
mod table;
mod verify;

use std::path::Path;

use etcs_blocks::Catalog;
use thiserror::Error;

pub use commands::{
    cmd_cover, cmd_enumerate, cmd_nu, cmd_polygon, cmd_tdual, GluingInput, NuRequest, OutputFormat,
};
pub use table::{
    fraction_string, parse_fraction, RowFilter, TableRow, TABLE_COLUMNS, TABLE_SCHEMA_VERSION,
};
pub use verify::{cmd_verify, run_suite, CheckResult, Suite};

/// Environment variable naming the default catalog file.
pub const CATALOG_ENV: &str = "ETCS_CATALOG";

/// Failures, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit status 1: unreadable files, bad catalogs or options.
    #[error("{0}")]
    Config(String),
    /// Exit status 2: mathematically invalid input.
    #[error("{0}")]
    InvalidInput(String),
    /// Exit status 3: a verification check failed.
    #[error("{failed} check(s) failed")]
    Verification { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("I/O error: {e}"))
    }
}

/// Loads the catalog at `path`, or the built-in one when `path` is `None`.
pub fn load_catalog(path: Option<&Path>) -> Result<Catalog, CliError> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                CliError::Config(format!("cannot read catalog {}: {e}", p.display()))
            })?;
            Catalog::parse(&text)
                .map_err(|e| CliError::Config(format!("catalog {}: {e}", p.display())))
        }
    }
}

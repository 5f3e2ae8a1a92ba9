//! IO, file formats and the command-line front end for `spintop-core`.
//!
//! Everything here is deterministic: fixed-precision text for floats, fixed
//! key order in JSON, and a single writer per run, so identical invocations
//! produce byte-identical outputs.

pub mod cli;
pub mod commands;
pub mod complexfmt;
pub mod csvio;
pub mod manifest;
pub mod pgm;
pub mod reports;

pub use cli::{Cli, Command};

use std::fmt;

/// Exit-code contract: 0 success, 2 usage, 3 numerical validation, 4 IO.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical validation failed: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spintop_core::Error> for CliError {
    fn from(e: spintop_core::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(args) => commands::evolve(args),
        Command::Dephase(args) => commands::dephase(args),
        Command::Compare(args) => commands::compare(args),
        Command::Figure1(args) => commands::figure1(args),
        Command::Scan(args) => commands::scan(args),
        Command::Bell(args) => commands::bell(args),
        Command::Decay(args) => commands::decay(args),
        Command::Ghz(args) => commands::ghz(args),
    }
}

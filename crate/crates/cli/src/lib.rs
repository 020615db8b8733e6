//! Command-line front end for the `planar-census` engine.

pub mod args;
mod commands;
mod render;

use std::fmt;

pub use args::{Cli, Command, IndexRange, OutputFormat};
pub use commands::{ProbRecord, TableRow, TightnessRow, VerifyOutput};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations.
    Usage(String),
    /// Rejected by the engine: out-of-domain input, budget, and so on.
    Core(planar_census::Error),
    Io(std::io::Error),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<planar_census::Error> for CliError {
    fn from(e: planar_census::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

/// Rendered output plus the exit status it should produce.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
    /// Short diagnostic for stderr, set on a verification mismatch.
    pub message: Option<String>,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (report, status) = match &cli.command {
        Command::Table(a) => (commands::table(a)?, None),
        Command::Coeffs(a) => (commands::coeffs(a)?, None),
        Command::Prob(a) => (commands::prob(a)?, None),
        Command::Verify(a) => {
            let (r, first) = commands::verify(a)?;
            (r, first)
        }
        Command::Errata => (commands::errata()?, None),
        Command::Tightness(a) => (commands::tightness(a)?, None),
    };
    Ok(Outcome {
        text: report.render(cli.format, cli.header)?,
        exit_code: if status.is_some() { EXIT_MISMATCH } else { EXIT_OK },
        message: status,
    })
}

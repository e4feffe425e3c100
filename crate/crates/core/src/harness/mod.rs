//! The `cusplab` command line: configuration, argument specs, CSV tables,
//! SVG figures and the subcommands that tie them to the library.

mod commands;
mod config;
mod spec;
mod svg;
mod table;

use thiserror::Error;

pub use commands::{run, Command, Output};
pub use config::{parse_config_text, RunConfig, KEYS};
pub use spec::{parse_generator, parse_n_list, parse_number, parse_weights};
pub use svg::{Chart, Series};
pub use table::{format_float, Cell, ResultTable};

/// Failure of a command, classified by exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Insufficient(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Domain(m) => CliError::Usage(m),
            crate::Error::Insufficient(m) => CliError::Insufficient(m),
            crate::Error::Numeric(m) => CliError::Numeric(m),
        }
    }
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

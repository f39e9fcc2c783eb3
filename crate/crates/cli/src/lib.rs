//! Library side of the `koszulkit` command: input parsing, command
//! dispatch and output rendering.

pub mod commands;
pub mod input;
pub mod output;

use koszulkit_core::presentations::PresentationError;
use koszulkit_core::series::SeriesError;
use koszulkit_core::spaces::SpaceError;

pub use commands::{run_command, Command, Flags, Outcome};
pub use input::{parse_input, read_input, InputDocument, Subject};
pub use output::{OutputTable, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Space(SpaceError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<SpaceError> for CliError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::Presentation(p) => CliError::Presentation(p),
            other => CliError::Space(other),
        }
    }
}

impl CliError {
    /// Short machine-readable category used in the diagnostic prefix.
    pub fn tag(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Syntax(_) => "syntax",
            CliError::Schema(_) => "schema",
            CliError::Presentation(_) => "presentation",
            CliError::Space(SpaceError::Connectivity { .. }) => "connectivity",
            CliError::Space(_) => "space",
            CliError::Series(_) => "series",
        }
    }

    /// `error[tag]: message` on a single line.
    pub fn diagnostic(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.tag(), msg)
    }
}

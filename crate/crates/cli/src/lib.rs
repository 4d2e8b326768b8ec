//! Library behind the `ccgeom` binary: file formats, reports, SVG scenes and
//! the three subcommands.

pub mod commands;
pub mod files;
pub mod report;
pub mod svg;

use ccgeom::GeomError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("space error: {0}")]
    Space(String),
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("geometry error: {0}")]
    Geometry(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Geometry(_) => 1,
            _ => 2,
        }
    }
}

// Geometry errors met while reading input describe bad input.
impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::SpaceMismatch => CliError::Space(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

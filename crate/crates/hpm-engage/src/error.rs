//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by numerical routines, scenario validation, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A mathematical function was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The engagement geometry is degenerate (e.g. zero mean range,
    /// target below the horizon sphere).
    #[error("degenerate geometry: {0}")]
    Geometry(String),

    /// A scenario file could not be parsed; anchored to the offending line.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Scenario validation found hard violations. All failures are listed.
    #[error("scenario validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error and result types shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation
    /// (negative time, non-finite input, a point past a feasibility bound).
    #[error("domain error: {0}")]
    Domain(String),

    /// A model, series, or configuration violates a structural invariant.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A numerical routine exhausted its budget or produced a non-finite
    /// intermediate value.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A file could not be read.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A data or model file is malformed. `line` is 1-based; 0 means the
    /// problem concerns the file as a whole.
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Error::Validation(message.into())
    }

    pub(crate) fn numerical(message: impl Into<String>) -> Self {
        Error::Numerical(message.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

/// Rejects non-finite or negative time arguments. Used by every operation
/// that consumes a time or scaled-time coordinate.
pub(crate) fn check_time(name: &str, t: f64) -> Result<()> {
    if !t.is_finite() {
        Err(Error::domain(format!("{name} must be finite, got {t}")))
    } else if t < 0.0 {
        Err(Error::domain(format!("{name} must be >= 0, got {t}")))
    } else {
        Ok(())
    }
}

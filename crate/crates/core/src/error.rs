use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical kernels and the data loaders.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A zero-list or table file could not be parsed.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Data parsed fine but contradicts an independent bound.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// A bracket straddles the decision threshold.
    #[error("insufficient zero data: {0}")]
    InsufficientData(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

use std::io;
use std::path::PathBuf;

use hbo_core::HboError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed document; the message carries the line and column.
    #[error("config: {0}")]
    Parse(String),
    #[error("config: {field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("empty series for {0}")]
    EmptySeries(String),
    #[error(transparent)]
    Numeric(#[from] HboError),
}

impl CliError {
    pub(crate) fn invalid(field: &str, message: impl Into<String>) -> Self {
        Self::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

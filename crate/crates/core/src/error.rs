use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or incomplete input data.
    Input,
    /// Invalid parameters or configuration.
    Config,
    /// A numerical procedure failed.
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid triangular fuzzy number ({lo}, {mode}, {hi}): {reason}")]
    InvalidTfn {
        lo: f64,
        mode: f64,
        hi: f64,
        reason: &'static str,
    },

    #[error("cannot parse triangular fuzzy number from {text:?}: expected `lo;mode;hi`")]
    TfnSyntax { text: String },

    #[error("{0}")]
    Domain(String),

    #[error("factor `{factor}`: value {value} lies outside the source range [{x}, {y}]")]
    OutOfRange {
        factor: String,
        value: f64,
        x: f64,
        y: f64,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{}:{line}: {message}", file.display())]
    Input {
        file: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Config,
            Error::Numeric(_) => ErrorClass::Numeric,
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub(crate) fn input(file: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Input {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

use std::path::PathBuf;

/// Errors raised across the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape error: expected {expected} values, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("formula error: {0}")]
    Formula(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("{name} = {value} lies outside the open interval (0, 1)")]
    Range { name: &'static str, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite {quantity} ({value}) from offspring {offspring}")]
    NonFinite {
        quantity: &'static str,
        offspring: usize,
        value: f64,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

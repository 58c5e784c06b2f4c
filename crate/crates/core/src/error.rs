use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("GML syntax error at line {line}: {message}")]
    GmlSyntax { line: usize, message: String },

    #[error("edge references undeclared node id {id} (line {line})")]
    UndeclaredNode { id: i64, line: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("class `{class}` has {count} point(s); {needed} required")]
    ClassTooSmall {
        class: String,
        count: usize,
        needed: usize,
    },

    #[error("class `{0}` is not present in the dataset")]
    UnknownClass(String),

    #[error("fewer than two classes remain after filtering (dropped: {dropped:?})")]
    TooFewClasses { dropped: Vec<String> },

    #[error("partitions are defined over different label sets")]
    LabelMismatch,

    #[error("malformed input in {path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }
}

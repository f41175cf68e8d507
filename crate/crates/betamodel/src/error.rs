use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A model-level violation traced back to an input line.
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: betamodel_core::Error,
    },
    #[error(transparent)]
    Model(#[from] betamodel_core::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "Io",
            Error::Parse { .. } => "Parse",
            Error::Line { source, .. } | Error::Model(source) => source.kind(),
            Error::Config(_) => "Config",
            Error::Json(_) => "Json",
            Error::UnknownDataset(_) => "UnknownDataset",
        }
    }
}

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pipeline: {0}")]
    InvalidPipeline(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid language statistics: {0}")]
    InvalidStats(String),

    #[error("invalid corpus: {0}")]
    InvalidCorpus(String),

    #[error("invalid vocabulary: {0}")]
    InvalidVocab(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown token id {0}")]
    UnknownToken(u32),

    #[error("{source_name}: line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("unsupported {format} version {found:?}, expected version {expected}")]
    Version {
        format: &'static str,
        found: String,
        expected: u32,
    },

    #[error("{source_name}: at {path}: {message}")]
    Json {
        source_name: String,
        path: String,
        message: String,
    },

    #[error("cannot access {what} ({})", path.display())]
    Io {
        what: String,
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn parse(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(what: impl Into<String>, path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            what: what.into(),
            path: path.into(),
            source,
        }
    }
}

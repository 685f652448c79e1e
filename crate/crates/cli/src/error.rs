use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] lgfine::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed input {}: {source}", path.display())]
    Input { path: PathBuf, source: serde_json::Error },

    #[error("cannot serialize output: {0}")]
    Serialize(serde_json::Error),
}

//! JSON formats, census enumeration and the `nillat` command-line front end.

pub mod census;
pub mod cli;
pub mod json;

/// Failures that make an invocation invalid (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] nillat_core::Error),
}

impl From<nillat_core::linalg::LinalgError> for CliError {
    fn from(e: nillat_core::linalg::LinalgError) -> Self {
        Self::Core(e.into())
    }
}

use thiserror::Error;

/// Errors that end a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] freeavg_core::ParseError),
    #[error("{0}")]
    Format(String),
    /// A well-formed input that describes an invalid structure.
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

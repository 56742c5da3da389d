use std::path::PathBuf;

/// Everything that stops a command before it can produce a report.
/// All of these map to exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] curvelab_core::Error),
}

use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed coefficient file {}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] cutjump_core::Error),
}

impl CliError {
    /// 2 for bad input or I/O, 3 when a numerical method did not converge.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(cutjump_core::Error::NonConvergence { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(#[from] dirac_susy::Error),

    /// Some sweep points failed; the others were written.
    #[error("numerical failure for {failed} of {total} lambda values (see summary)")]
    Partial { failed: usize, total: usize },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for configuration (including unusable output paths), 3 for numerics.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) | CliError::Partial { .. } => 3,
        }
    }
}

use std::path::PathBuf;

use ghz_chsh::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("cannot parse {what}: {message}")]
    Parse { what: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 3 for capacity, 4 for a
    /// degenerate direction, 5 for parity and phase-sum violations, 1 for a
    /// failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::Capacity { .. } => 3,
                Error::DegenerateDirection(_) => 4,
                Error::Parity(_) | Error::PhaseSum(_) => 5,
                Error::CrossCheck(_)
                | Error::EigenFailure
                | Error::ImaginaryResidue(_)
                | Error::NotHermitian(_)
                | Error::InconsistentConfiguration(_) => 1,
                _ => 2,
            },
        }
    }
}

use std::io;
use std::path::PathBuf;

use pwlcenter_core::Error as CoreError;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for malformed input, 3 when `b` has a non-simple zero, 4 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Invalid(_) => 2,
            CliError::Write { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::NonSimpleB { .. } => 3,
                CoreError::TangencyAmbiguous { .. }
                | CoreError::InconsistentBand { .. }
                | CoreError::NoTwoZeroBand
                | CoreError::NoSolution { .. } => 4,
                CoreError::IdenticallyZero
                | CoreError::AllConstant
                | CoreError::NotInA { .. }
                | CoreError::ConstantInner
                | CoreError::BothZero
                | CoreError::Invalid(_) => 2,
            },
        }
    }
}

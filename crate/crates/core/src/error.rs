use thiserror::Error;

use crate::oracle::QueryLedger;

#[derive(Debug, Error)]
pub enum CutQueryError {
    #[error("malformed graph input at line {line}: {reason}")]
    MalformedGraph { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid generator spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("stream rejected: {0}")]
    StreamRejected(String),

    #[error("edge sampling failed: {0}")]
    SamplingFailed(String),

    #[error("graph recovery failed: {0}")]
    RecoveryFailed(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("all {trials} trials failed")]
    AllTrialsFailed { trials: usize, ledger: QueryLedger },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CutQueryError> = std::result::Result<T, E>;

use diraccomb::CombError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for domain and usage errors, 3 for unmet tolerances, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Comb(e) if e.is_tolerance_failure() => 3,
            CliError::ChecksFailed { .. } => 3,
            CliError::Comb(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

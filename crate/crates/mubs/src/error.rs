use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mubs_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("dimension mismatch: q = {left} vs q = {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    /// Machine-readable code printed with the error.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "InvalidParameters",
            CliError::DimensionMismatch { .. } => "DimensionMismatch",
            CliError::Io(_) => "Io",
            CliError::Json(_) => "Json",
            CliError::Csv(_) => "Csv",
        }
    }

    /// Every error means the run could not be carried out as configured.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

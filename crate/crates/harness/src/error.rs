use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("brute-force oracle limited to dimension 3, got {0}")]
    DimTooLarge(usize),

    #[error("invalid experiment configuration: {0}")]
    Config(String),

    #[error("I/O failure: {0}")]
    IoFailure(#[from] std::io::Error),

    #[error("CSV failure: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON failure: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] bpb_core::Error),
}

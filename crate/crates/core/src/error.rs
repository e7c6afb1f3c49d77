use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("dataset has no valid rows")]
    EmptyDataset,
    #[error("duplicate price row for {0}")]
    DuplicateDate(NaiveDate),
    #[error("non-positive close price on {0}")]
    NonPositiveClose(NaiveDate),
    #[error("malformed price row {row}: {reason}")]
    MalformedPriceRow { row: usize, reason: String },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("smoothing alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("token id {id} out of range for vocabulary of size {vocab_size}")]
    IdOutOfRange { id: usize, vocab_size: usize },
    #[error("training data is empty")]
    EmptyData,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("tweet {id} is missing the {model} label")]
    MissingModelLabel { id: String, model: &'static str },
    #[error("at least two price bars are required")]
    TooFewBars,
    #[error("input series is not sorted by date")]
    UnsortedInput,
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("invalid train/test split: {0}")]
    InvalidSplit(String),
    #[error("model file version mismatch: expected `{expected}`, found `{found}`")]
    ModelVersionMismatch { expected: String, found: String },
    #[error("malformed {what}: {reason}")]
    Malformed { what: &'static str, reason: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Malformed {
            what,
            reason: reason.into(),
        }
    }

    /// Process exit code: 1 usage, 2 data, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSplit(_) | Error::InvalidConfig(_) | Error::NonPositiveAlpha(_) => 1,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

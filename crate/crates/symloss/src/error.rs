//! Crate-wide error type.

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("label {label} out of range for {num_classes} classes")]
    InvalidLabel { label: usize, num_classes: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The optimization problem has no unique solution (e.g. a zero data
    /// centroid, where any norm-feasible weight matrix is optimal).
    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Training hit a non-finite loss. Carries the partial record gathered
    /// up to the failing step as a diagnostic.
    #[error("training aborted: {message}")]
    TrainAbort {
        message: String,
        record: Box<crate::training::TrainRecord>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not unitary (residual {residual:.3e} > {tolerance:.3e})")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A construction produced a count that disagrees with its closed form.
    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("pairwise budget exceeded: need {required} trace evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("empty codebook")]
    EmptyCodebook,

    #[error("codebook file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that indicate a construction disagreed with its
    /// certificate rather than bad user input.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

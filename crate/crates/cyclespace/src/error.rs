use thiserror::Error;

/// Errors across the crate. The CLI maps these onto its exit-code contract:
/// 1 = verification failure, 2 = bad configuration, 3 = resource budget.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported modulus m = {0}; supported values are 3, 4, 5")]
    UnsupportedModulus(u32),

    #[error("dimension N must be at least 1")]
    ZeroDimension,

    #[error("size budget exceeded: {needed} vertices needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("infeasible level signature: {0}")]
    InfeasibleSignature(String),

    #[error("operator dimension mismatch: {lhs} vs {rhs}")]
    DimensionMismatch { lhs: String, rhs: String },

    #[error("coordinate {k} is already at the maximal level")]
    MaxLevel { k: usize },

    #[error("coordinate {k} is null; nothing to lower")]
    NullLevel { k: usize },

    #[error("invalid coordinate index {k} for dimension {n}")]
    BadCoordinate { k: usize, n: usize },

    #[error("{0}")]
    BadConfig(String),

    #[error("eigenvalue classification is ambiguous: {0}")]
    ClassificationAmbiguous(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("numerical decomposition failed: {0}")]
    NumericalFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) => 1,
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}

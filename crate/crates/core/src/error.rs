use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    SingularDivision,

    #[error("operation requires constant term {expected}, found {found}")]
    BadConstantTerm { expected: &'static str, found: String },

    #[error("nth root requires unit constant term after normalization, found {found}")]
    BranchPoint { found: String },

    #[error("{0}")]
    Domain(String),

    #[error("coefficient index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("need coefficients through a{needed}, have a{have}")]
    MissingCoefficient { needed: usize, have: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("no sign change over bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("box budget {budget} exhausted with gap {gap:.3e}")]
    BudgetExhausted {
        budget: u64,
        gap: f64,
        partial: Box<crate::optimizer::BoundCertificate>,
    },

    #[error("unknown identifier: {0}")]
    UnknownIdentifier(String),
}

pub type Result<T> = std::result::Result<T, Error>;

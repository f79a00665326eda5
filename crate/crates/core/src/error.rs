use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("domain error: {0}")]
    DomainError(String),

    #[error("radicand mismatch: sqrt({left}) and sqrt({right}) generate different fields")]
    RadicandMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),

    #[error("genus {g} is below the Ihara range for q = {q} (requires g >= {g2})")]
    BelowIharaRange { q: u64, g: u64, g2: u64 },

    #[error("q = {q} is outside the range of the g = 4q family (requires q >= 34)")]
    OutOfIharaRange { q: u64 },

    #[error("invalid affine cut: {0}")]
    InvalidCut(String),

    #[error("affine cut has no positivity certificate for q = {q}")]
    UncertifiedCut { q: u64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is not positive semidefinite")]
    NotPsd,

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("order-3 determinant has no real root for q = {q}, g = {g}")]
    NoRealRoot { q: u64, g: u64 },

    #[error("no candidate matrix satisfied integrality and semidefiniteness")]
    EmptySearch,

    #[error("degree {degree} exceeds the supported maximum of 8")]
    DegreeTooHigh { degree: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, BoundError>;

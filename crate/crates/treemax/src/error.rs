use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constraint among the parameters of a query or triple is violated.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A construction would exceed the configured size limits.
    #[error("resource limit: {0}")]
    Resource(String),

    /// The two operands belong to different trees.
    #[error("tree mismatch: {lhs} vs {rhs}")]
    TreeMismatch { lhs: String, rhs: String },

    /// A set measure is not representable on the leaf grid.
    #[error("quantization error: {0}")]
    Quantization(String),

    /// A branch-specific construction was asked for parameters of the other branch.
    #[error("wrong branch: {0}")]
    WrongBranch(String),

    /// A malformed serialized object was rejected.
    #[error("invalid representation: {0}")]
    InvalidRepr(String),

    /// A bounded randomized retry loop gave up.
    #[error("sampling failed after {retries} retries: {reason}")]
    SamplingFailed { retries: u32, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

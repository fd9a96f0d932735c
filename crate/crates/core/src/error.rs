//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Multiplicative inverse of zero.
    #[error("division by zero")]
    DivisionByZero,

    /// Prime-field construction with a modulus that is not an odd prime.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    /// A matrix inverse was requested for a singular matrix.
    #[error("singular matrix")]
    SingularMatrix,

    /// Congruence diagonalization requires a symmetric input.
    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// A tensor power would exceed the configured size cap.
    #[error("size cap exceeded: {size} > {cap}")]
    CapExceeded { size: u128, cap: u128 },

    /// The level-1 trace form is singular, so the algebra lies outside the
    /// generic set the separating invariants cover.
    #[error("level-1 trace form is singular: algebra is not generic")]
    NotGeneric,

    /// The covariant-row scan ran out of candidates before reaching full rank.
    #[error("frame deficient: reached rank {achieved_rank} only")]
    FrameDeficient { achieved_rank: usize },

    /// An operation restricted to one field kind was called with the other.
    #[error("wrong field: {0}")]
    WrongField(&'static str),

    /// Invariants matched but the reconstructed witness failed verification.
    /// Carries full diagnostics; this indicates a broken internal assumption,
    /// not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

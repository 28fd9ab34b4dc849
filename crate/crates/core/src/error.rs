use thiserror::Error;

/// Errors raised by the algebra, root finding and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate frame: the two imaginary units span a single slice")]
    DegenerateFrame,

    #[error("not an imaginary unit: {0}")]
    InvalidUnit(String),

    #[error("root finding failed: {0}")]
    RootFindingFailed(String),

    #[error("the function is identically zero")]
    ZeroFunction,

    #[error("invalid sphere: beta must be positive, got {0}")]
    InvalidSphere(f64),

    #[error("inconsistent sphere at alpha={alpha}, beta={beta}: {reason}")]
    InconsistentSphere { alpha: f64, beta: f64, reason: String },

    #[error("the function has isolated non-real zeros")]
    HasIsolatedNonRealZeros,

    #[error("not representable as a symmetrized function: {0}")]
    NotRepresentable(String),

    #[error("closed formula disagrees with the direct product (relative error {0:e})")]
    FormulaMismatch(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("structure not found: {0}")]
    StructureNotFound(String),

    #[error("invalid degree {0}")]
    InvalidDegree(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

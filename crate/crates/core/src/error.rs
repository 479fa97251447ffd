use thiserror::Error;

use crate::poly::ParseError;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("ill-formed ring map: relation `{relation}` maps to `{image}`, not zero")]
    IllFormedMap { relation: String, image: String },

    #[error("ring map needs {expected} images, got {found}")]
    ImageCount { expected: usize, found: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cannot saturate by the zero element")]
    ZeroSaturator,

    #[error("expected at least one nonzero generator")]
    NoGenerators,

    #[error("point {point:?} does not satisfy the ring relations")]
    PointNotOnVariety { point: Vec<String> },

    #[error("unsupported center: {0}")]
    UnsupportedCenter(String),

    #[error("operation requires a blow-up of smooth affine space")]
    NotABlowup,

    #[error("finite map: {0}")]
    NotFinite(String),

    #[error("chart data incompatible on overlap: {0}")]
    Incompatible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("step budget exhausted after {0} steps")]
    BudgetExhausted(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

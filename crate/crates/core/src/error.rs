use thiserror::Error;

use crate::algebra::AlgebraSignature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree undefined for zero index")]
    DegreeOfZero,

    #[error("cutoff index undefined for ({a}, {b}): both indices must be nonzero and distinct")]
    CutoffUndefined { a: u32, b: u32 },

    #[error("index {index} out of range for level {level} (must be < {bound})", bound = 1u64 << level)]
    IndexOutOfRange { index: u64, level: u32 },

    #[error("level {level} exceeds the supported maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },

    #[error("split signature needs at least one doubling step")]
    SplitLevelZero,

    #[error("no closed-form twist for this signature ({0})")]
    UnsupportedSignature(AlgebraSignature),

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch {
        left: AlgebraSignature,
        right: AlgebraSignature,
    },

    #[error("expected {expected} coefficients, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("table level {level} exceeds cap {cap}")]
    TableCapExceeded { level: u32, cap: u32 },

    #[error("{0}")]
    Unsupported(String),

    /// An engine produced a result that contradicts a structural guarantee.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate an engine bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

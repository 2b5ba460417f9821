use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("degenerate interval on axis {axis}: [{lo}, {hi}]")]
    DegenerateInterval {
        axis: usize,
        lo: String,
        hi: String,
    },

    #[error("set is empty")]
    EmptySet,

    #[error("lattice generator matrix is singular")]
    SingularLattice,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("frequency 0 is not allowed here; use the numeric transform")]
    ZeroFrequency,

    #[error("truncation too small: tail uncertainty {tail:e} exceeds tolerance {tol:e}")]
    TruncationTooSmall { tail: f64, tol: f64 },

    #[error("no corner configuration found in patch")]
    NoCorner,

    #[error("extraction counterexample: w = {w:?} but u + v = {sum:?}")]
    ExtractionCounterexample { w: Vec<Rational>, sum: Vec<Rational> },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

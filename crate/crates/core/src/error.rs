use thiserror::Error;

use crate::multilinear::ScalarMode;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed scalar modes: {0:?} and {1:?}")]
    MixedModes(ScalarMode, ScalarMode),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis is singular")]
    SingularBasis,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("flag tuple is not generic: {0}")]
    NonGeneric(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("element is not hyperbolic (|trace| = {trace})")]
    NotHyperbolic { trace: f64 },

    #[error("invalid shears: {0}")]
    InvalidShears(String),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("length mismatch across curve {curve}: {left} vs {right}")]
    LengthMismatch { curve: String, left: f64, right: f64 },

    #[error("unknown curve {0}")]
    UnknownCurve(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("polytope violation: {0}")]
    Polytope(String),

    #[error("unknown verification suite {0}")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the pointwise algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("forms belong to different fiber models")]
    ModelMismatch,
    #[error("expected a homogeneous form, got mixed degrees")]
    NonHomogeneous,
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("form is not real: conj(f) != f")]
    NotReal,
    #[error("form has components outside Hodge type {expected}")]
    WrongHodgeType { expected: &'static str },
    #[error("reality condition {condition} violated")]
    RealityViolation { condition: &'static str },
    #[error("input is not pure of weight 2 (nonzero invariant part)")]
    NotPureWeight2,
    #[error("dimension out of supported range: {what}")]
    SizeOutOfRange { what: String },
    #[error("matrix shape mismatch: {what}")]
    ShapeMismatch { what: String },
    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: usize },
}

/// Errors raised by the verification harness.
#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot write report: {0}")]
    ReportIo(#[from] std::io::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

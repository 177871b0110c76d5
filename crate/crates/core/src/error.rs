use thiserror::Error;

use crate::algebra::AlgebraError;

/// Errors raised while parsing inputs or building jet-space objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("jet variable `{0}` is not allowed here")]
    JetNotAllowed(String),
    #[error("{0}: denominator depends on first-order jet variables")]
    JetInDenominator(String),
    #[error("{0}: point transformations may not depend on jet variables")]
    JetInTransform(String),
    #[error("Jacobian determinant vanishes at the base point")]
    SingularJacobianAtBasePoint,
    #[error("transformation has a pole at the base point")]
    PoleAtBasePoint,
    #[error("Jacobian determinant is identically zero")]
    DegenerateTransformation,
    #[error("expected m {expected}, got m = {got}")]
    WrongArity { expected: &'static str, got: usize },
    #[error("m = {0} is outside the supported range 1..={max}", max = crate::algebra::MAX_M)]
    UnsupportedDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Cramer elimination disagrees with the square-function assembly for F{0}")]
    CramerMismatch(usize),
    #[error("the linear criterion disagrees with the general check")]
    LinearCheckMismatch,
    #[error("every sample point hit a pole")]
    AllSamplesPoles,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, Error>;

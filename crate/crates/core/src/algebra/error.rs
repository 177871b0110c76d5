use thiserror::Error;

use super::variable::VariableId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("a denominator vanishes identically after substitution")]
    SubstitutionPole,
    #[error("the denominator vanishes at the evaluation point")]
    EvaluationPole,
    #[error("no value bound for variable {0}")]
    UnboundVariable(VariableId),
    #[error("matrix is not square")]
    NotSquare,
}

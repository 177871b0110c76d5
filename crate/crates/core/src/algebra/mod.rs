//! Exact polynomial and rational-function arithmetic over Q.

mod error;
mod matrix;
mod monomial;
mod polynomial;
mod rational;
mod rational_function;
mod variable;

pub use error::AlgebraError;
pub use matrix::{determinant, determinant_cofactor, Matrix};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use rational::{content, Q};
pub use rational_function::RationalFunction;
pub use variable::{VariableId, MAX_M, NVARS};

//! Exact symbolic tests for point-linearizability of systems of second-order
//! ordinary differential equations.
//!
//! A system `y_xx^j = F^j(x, y, y_x)` is linearizable when some point
//! transformation maps it to the free particle system `Y_XX^j = 0`. The
//! pipeline extracts the cubic structure of `F` and evaluates the
//! first-order families (`m >= 2`) or Lie's two equations (`m = 1`) as exact
//! rational functions.

pub mod algebra;
pub mod cli;
pub mod criteria;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod jets;

pub use error::{Error, Result};

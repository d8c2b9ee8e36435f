//! Exact number types: arbitrary-precision rationals and quadratic surds,
//! plus polynomial identity certification by evaluation.

mod poly;
mod rational;
mod surd;

pub use poly::{poly_eval, poly_identity_check, poly_mul, poly_scale, poly_sub};
pub use rational::Rat;
pub use surd::Surd;

use thiserror::Error;

/// Errors produced by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Division of a rational by zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A surd was requested with `sqrt` of a negative rational.
    #[error("negative radicand {0}")]
    NegativeRadicand(Rat),
    /// A rational literal failed to parse as `num` or `num/den`.
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

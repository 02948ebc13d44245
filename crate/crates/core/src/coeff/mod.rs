//! Exact coefficient arithmetic: rationals, multivariate polynomials over the
//! rationals, and rational functions in a fixed set of parameters.

mod field;
mod params;
mod poly;
mod ratfunc;
mod rational;

pub use field::Field;
pub use params::{param_ring, ParamAssignment, PARAMETERS};
pub use poly::{Monomial, Poly, PolyRing};
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, rat, Rational};

use thiserror::Error;

/// Errors raised by coefficient arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different polynomial rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("variable `{0}` is not assigned a value")]
    Unassigned(String),
    #[error("denominator vanishes at the given point")]
    VanishingDenominator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid rational literal `{0}`")]
    InvalidLiteral(String),
    #[error("z must be nonzero")]
    ZeroZ,
}

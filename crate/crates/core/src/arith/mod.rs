//! Exact arithmetic: rationals, sparse multivariate polynomials over the
//! rationals, and the small amount of linear algebra the rest of the crate
//! needs.
//!
//! Every value here is immutable once built and free of shared state, so
//! polynomials can be sent across threads freely.

mod binomial;
pub mod linalg;
mod poly;
mod polyt;
mod rational;
mod resultant;
mod text;

pub use binomial::binomial_poly;
pub use poly::{Monomial, MultiPoly, Var};
pub use polyt::PolyT;
pub use rational::{fmt_rational, int, rat, Rational};
pub use resultant::{sylvester_matrix, univariate_coeffs, univariate_resultant};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("expected a univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("variable `{0}` is unbound")]
    Unbound(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

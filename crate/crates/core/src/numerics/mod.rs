//! Arbitrary-precision substrate: precision contexts, real and rational
//! carriers, Bernoulli numbers and the fundamental constants.

mod bernoulli;
mod constants;
mod real;

pub use bernoulli::{bernoulli, binomial};
pub use constants::{euler_gamma, log2, pi, zeta, zeta_float};
pub use real::{agreement_digits, format_significant, format_truncated, log10_abs, BigReal, PrecisionContext};
pub(crate) use real::{digits_to_bits, ten_pow_neg};

/// Exact rationals are GMP rationals, always kept in lowest terms.
pub type BigRational = rug::Rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("working precision must be at least 30 digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("zeta({0}) is not defined here (need s >= 2)")]
    ZetaArgument(u32),
    #[error("cannot parse decimal number {0:?}")]
    Parse(String),
}

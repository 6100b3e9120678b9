use rug::ops::Pow;
use rug::{Integer, Rational};
use thiserror::Error;

/// Largest n accepted by `partial_sum_exact`.
pub const MAX_EXACT_TERMS: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialSumError {
    #[error("n = {0} exceeds the exact-summation cap of {MAX_EXACT_TERMS}")]
    TooManyTerms(u64),
    #[error("power p must be at least 1")]
    ZeroPower,
}

/// Denominator shapes for finite sums of H_k^(p-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteShape {
    /// 1/k
    OverK,
    /// 1/(k+1)
    OverKPlus1,
    /// 1/k^j
    OverKPower(u32),
    /// 1/(k+1)^j
    OverKPlus1Power(u32),
}

/// sum_{k=1}^{n} H_k^(p-1) / shape(k), exactly.
pub fn partial_sum_exact(p: u32, n: u64, shape: FiniteShape) -> Result<Rational, PartialSumError> {
    if p == 0 {
        return Err(PartialSumError::ZeroPower);
    }
    if n > MAX_EXACT_TERMS {
        return Err(PartialSumError::TooManyTerms(n));
    }
    Ok(partial_sums_exact(p, n, shape).pop().unwrap_or_default())
}

/// All prefix sums for n = 0..=n_max (index n holds the sum to n).
pub fn partial_sums_exact(p: u32, n_max: u64, shape: FiniteShape) -> Vec<Rational> {
    let (shift, power) = match shape {
        FiniteShape::OverK => (0, 1),
        FiniteShape::OverKPlus1 => (1, 1),
        FiniteShape::OverKPower(j) => (0, j),
        FiniteShape::OverKPlus1Power(j) => (1, j),
    };
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Rational::new());
    let mut h = Rational::new();
    let mut acc = Rational::new();
    for k in 1..=n_max {
        h += Rational::from((1, k));
        let num = Rational::from((&h).pow(p - 1));
        let den = Integer::from(k + shift).pow(power);
        acc += num / den;
        out.push(acc.clone());
    }
    out
}

/// H_n^(p) for n = 0..=n_max.
pub fn harmonic_prefixes(p: u32, n_max: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut h = Rational::new();
    out.push(h.clone());
    for k in 1..=n_max {
        h += Rational::from((1, Integer::from(k).pow(p)));
        out.push(h.clone());
    }
    out
}

//! Harmonic numbers: exact values, the asymptotic expansion H-hat(t), jets of
//! the tail function G-hat and the exp-sinh tail integral.

mod ghat;
mod jet;
mod quadrature;

pub use ghat::{ghat_jet, ghat_value, tail_integral};
pub(crate) use ghat::ghat_jet_with;
pub use jet::Jet;
pub use quadrature::exp_sinh;

use rug::{Float, Rational};
use thiserror::Error;

use crate::numerics::{bernoulli, euler_gamma, BigReal, PrecisionContext};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("asymptotic expansion needs t >= {min}, got {t}")]
    BelowThreshold { t: f64, min: u32 },
    #[error("sum has no denominator factors")]
    Degenerate,
    #[error("jet order {order} exceeds 2s+1 = {max}")]
    JetOrder { order: usize, max: usize },
    #[error("exp-sinh quadrature did not converge after {levels} levels")]
    Quadrature { levels: u32 },
}

/// Smallest argument accepted by the asymptotic series.
pub const ASYMPTOTIC_MIN_T: u32 = 10;

/// H_k as an exact rational.
pub fn harmonic_exact(k: u64) -> Rational {
    harmonic_exact_order(k, 1)
}

/// Generalized harmonic number H_k^(p) = sum_{j<=k} 1/j^p.
pub fn harmonic_exact_order(k: u64, p: u32) -> Rational {
    use rug::ops::Pow;
    let mut s = Rational::new();
    for j in 1..=k {
        s += Rational::from((1, rug::Integer::from(j).pow(p)));
    }
    s
}

/// H-hat(t) = gamma + log t + 1/(2t) + sum_{j=1}^{s} c_j t^(-2j),
/// with c_j = -B_2j/(2j).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    coefficients: Vec<Rational>,
}

impl HarmonicExpansion {
    pub const DEFAULT_ORDER: u32 = 21;

    pub fn new(s: u32) -> Self {
        let coefficients = (1..=s)
            .map(|j| -bernoulli(2 * j) / Rational::from(2 * j))
            .collect();
        Self { coefficients }
    }

    pub fn truncation_order(&self) -> u32 {
        self.coefficients.len() as u32
    }

    /// Coefficient of t^(-2j), 1 <= j <= s.
    pub fn coefficient(&self, j: u32) -> &Rational {
        &self.coefficients[j as usize - 1]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Evaluates the expansion given gamma at the target precision.
    pub fn evaluate(&self, t: &Float, gamma: &Float) -> Float {
        let prec = gamma.prec().max(t.prec());
        let mut v = Float::with_val(prec, t.ln_ref());
        v += gamma;
        let inv = Float::with_val(prec, t.recip_ref());
        v += Float::with_val(prec, &inv / 2u32);
        let inv2 = Float::with_val(prec, inv.square_ref());
        // Horner in u = t^-2: sum c_j u^j
        let mut acc = Float::with_val(prec, 0);
        for c in self.coefficients.iter().rev() {
            acc += Float::with_val(prec, c);
            acc *= &inv2;
        }
        v + acc
    }

    /// |B_{2s+2}| / ((2s+2) t^(2s+2)).
    pub fn remainder_bound(&self, t: &Float) -> Float {
        let n = 2 * self.truncation_order() + 2;
        let b = Rational::from(bernoulli(n).abs_ref()) / n;
        let prec = t.prec();
        let tp = Float::with_val(prec, rug::ops::Pow::pow(t, n));
        Float::with_val(prec, &b) / tp
    }

    /// log10 of the remainder bound at an integer point, cheap f64 estimate.
    pub fn log10_remainder_bound(&self, t: f64) -> f64 {
        let n = 2 * self.truncation_order() + 2;
        log10_bernoulli_over(n) - n as f64 * t.log10()
    }
}

/// log10(|B_n| / n) as an f64.
pub(crate) fn log10_bernoulli_over(n: u32) -> f64 {
    let b = Rational::from(bernoulli(n).abs_ref()) / n;
    let num = Float::with_val(64, b.numer());
    let den = Float::with_val(64, b.denom());
    crate::numerics::log10_abs(&num) - crate::numerics::log10_abs(&den)
}

/// H-hat(t) with `s` expansion terms.
pub fn harmonic_asymptotic(t: &BigReal, s: u32, ctx: &PrecisionContext) -> Result<BigReal, HarmonicError> {
    if *t.value() < ASYMPTOTIC_MIN_T {
        return Err(HarmonicError::BelowThreshold { t: t.to_f64(), min: ASYMPTOTIC_MIN_T });
    }
    let gamma = euler_gamma(ctx);
    let tt = Float::with_val(ctx.bits(), t.value());
    let v = HarmonicExpansion::new(s).evaluate(&tt, gamma.value());
    Ok(BigReal::new(v, ctx.working_digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::agreement_digits;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn exact_values() {
        assert_eq!(harmonic_exact(1), 1);
        assert_eq!(harmonic_exact(4), Rational::from((25, 12)));
        // oracle: direct left-to-right rational sum
        let mut s = Rational::new();
        for j in 1..=10u32 {
            s += Rational::from((1, j));
        }
        assert_eq!(harmonic_exact(10), s);
        assert_eq!(harmonic_exact(10), Rational::from((7381, 2520)));
        assert_eq!(harmonic_exact_order(3, 2), Rational::from((49, 36)));
    }

    #[test]
    fn printed_coefficients() {
        let e = HarmonicExpansion::new(21);
        assert_eq!(*e.coefficient(1), Rational::from((-1, 12)));
        assert_eq!(*e.coefficient(2), Rational::from((1, 120)));
        assert_eq!(*e.coefficient(6), Rational::from((691, 32760)));
        assert_eq!(*e.coefficient(7), Rational::from((-1, 12)));
        assert_eq!(*e.coefficient(9), Rational::from((-43867, 14364)));
        let c21: Rational = "-1520097643918070802691/75852".parse().unwrap();
        assert_eq!(*e.coefficient(21), c21);
        let c18: Rational = "26315271553053477373/69090840".parse().unwrap();
        assert_eq!(*e.coefficient(18), c18);
    }

    #[test]
    fn rejects_small_t() {
        let t = BigReal::from_f64(5.0, 30);
        assert!(matches!(
            harmonic_asymptotic(&t, 21, &ctx(30)),
            Err(HarmonicError::BelowThreshold { .. })
        ));
    }

    #[test]
    fn matches_exact_at_1000() {
        let c = ctx(100);
        let t = BigReal::from_f64(1000.0, 100);
        let h = harmonic_asymptotic(&t, 21, &c).unwrap();
        let exact = Float::with_val(c.bits(), &harmonic_exact(1000));
        let diff = Float::with_val(c.bits(), h.value() - &exact).abs();
        assert!(diff < 1e-60);
        assert!(diff <= HarmonicExpansion::new(21).remainder_bound(t.value()));
    }

    #[test]
    fn large_t_bound_extrapolates() {
        // at t = 1e5 the s = 21 error is below the stated bound, which at
        // t = 1e8 predicts ~44*8 - 18 correct digits
        let c = ctx(260);
        let e = HarmonicExpansion::new(21);
        let t = Float::with_val(c.bits(), 100_000);
        let exact = Float::with_val(c.bits(), &harmonic_exact(100_000));
        let h = e.evaluate(&t, euler_gamma(&c).value());
        let err = Float::with_val(c.bits(), &h - &exact).abs();
        assert!(err <= e.remainder_bound(&t));
        assert!(e.log10_remainder_bound(1e8) < -330.0);
        assert!(agreement_digits(&h, &exact) > 200.0);
    }

    #[test]
    fn error_decreases_with_s_and_respects_bound() {
        let c = ctx(120);
        let g = euler_gamma(&c);
        let t = Float::with_val(c.bits(), 100);
        let exact = Float::with_val(c.bits(), &harmonic_exact(100));
        let mut last = Float::with_val(c.bits(), 1);
        for s in 1..=30 {
            let e = HarmonicExpansion::new(s);
            let err = Float::with_val(c.bits(), e.evaluate(&t, g.value()) - &exact).abs();
            assert!(err <= e.remainder_bound(&t), "bound violated at s = {s}");
            assert!(err < last, "error grew at s = {s}");
            last = err;
        }
    }
}

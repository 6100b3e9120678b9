//! Classical identities between I(m,n) = sum H_k^m/k^n, s_h(m,n) =
//! sum H_k^m/(k+1)^n, J(m,n) = sum H_k^(m)/k^n and
//! sigma(m,n) = sum H_k^(m)/(k+1)^n.

use rug::Rational;

use super::closed_form::ClosedForm;
use super::reduce::SumExpr;
use super::SymbolicError;
use crate::numerics::binomial;
use crate::sums::MixedSumSpec;

fn constraint<T>(msg: String) -> Result<T, SymbolicError> {
    Err(SymbolicError::Constraint(msg))
}

fn zeta(n: u32) -> ClosedForm {
    ClosedForm::zeta(n)
}

fn zz(a: u32, b: u32) -> ClosedForm {
    &zeta(a) * &zeta(b)
}

fn sh(m: u32, n: u32) -> MixedSumSpec {
    MixedSumSpec::single(m, 1, n)
}

fn basic(m: u32, n: u32) -> MixedSumSpec {
    MixedSumSpec::single(m, 0, n)
}

/// I(n,p) = zeta(n+p) + sum_{m=1}^{n} C(n,m) s_h(m, p+n-m)
pub fn i_from_s(n: u32, p: u32) -> Result<SumExpr, SymbolicError> {
    if n < 1 || p < 2 {
        return constraint(format!("I({n},{p}) needs n >= 1 and p >= 2"));
    }
    let mut e = SumExpr::new();
    e.add_constant(&Rational::from(1), &zeta(n + p));
    for m in 1..=n {
        e.add_sum(sh(m, p + n - m), Rational::from(binomial(n, m)));
    }
    Ok(e)
}

/// s_h(n,p) = (-1)^n zeta(n+p) + sum_{m=1}^{n} C(n,m) (-1)^(m-n) I(m, p+n-m)
pub fn s_from_i(n: u32, p: u32) -> Result<SumExpr, SymbolicError> {
    if n < 1 || p < 2 {
        return constraint(format!("s_h({n},{p}) needs n >= 1 and p >= 2"));
    }
    let sign = |e: u32| if e.is_multiple_of(2) { 1 } else { -1 };
    let mut e = SumExpr::new();
    e.add_constant(&Rational::from(sign(n)), &zeta(n + p));
    for m in 1..=n {
        e.add_sum(basic(m, p + n - m), Rational::from(binomial(n, m) * sign(n - m)));
    }
    Ok(e)
}

/// I(2,n) - s_h(2,n) = 2 s_h(1,n+1) + zeta(n+2)
pub fn i2_minus_s2(n: u32) -> Result<SumExpr, SymbolicError> {
    if n < 2 {
        return constraint(format!("n = {n} must be at least 2"));
    }
    let mut e = SumExpr::new();
    e.add_sum(sh(1, n + 1), Rational::from(2));
    e.add_constant(&Rational::from(1), &zeta(n + 2));
    Ok(e)
}

/// J(m,n) = sigma(m,n) + zeta(m+n)
pub fn j_from_sigma(m: u32, n: u32, sigma: &ClosedForm) -> ClosedForm {
    sigma + &zeta(m + n)
}

/// sigma(1,m) = m/2 zeta(m+1) - 1/2 sum_{k=1}^{m-2} zeta(m-k) zeta(k+1), m >= 2
pub fn euler_sigma1(m: u32) -> Result<ClosedForm, SymbolicError> {
    if m < 2 {
        return constraint(format!("m = {m} must be at least 2"));
    }
    let mut out = zeta(m + 1).scaled(&Rational::from((m, 2)));
    let half = Rational::from((-1, 2));
    for k in 1..=m.saturating_sub(2) {
        out.add_scaled(&half, &zz(m - k, k + 1));
    }
    Ok(out)
}

/// sigma(m,n) + sigma(n,m) = zeta(m) zeta(n) - zeta(m+n), m, n >= 2
pub fn sigma_reflection(m: u32, n: u32) -> Result<ClosedForm, SymbolicError> {
    if m < 2 || n < 2 {
        return constraint(format!("reflection needs m, n >= 2 (got {m}, {n})"));
    }
    Ok(&zz(m, n) - &zeta(m + n))
}

/// J(m,n) + J(n,m) = zeta(m) zeta(n) + zeta(m+n), m, n >= 2
pub fn j_reflection(m: u32, n: u32) -> Result<ClosedForm, SymbolicError> {
    if m < 2 || n < 2 {
        return constraint(format!("reflection needs m, n >= 2 (got {m}, {n})"));
    }
    Ok(&zz(m, n) + &zeta(m + n))
}

/// sigma(s,t) for odd weight s+t, t > 1 and s >= 2.
///
/// s = 1 would bring in zeta(1); `euler_sigma1` covers that case.
pub fn sigma_odd_weight(s: u32, t: u32) -> Result<ClosedForm, SymbolicError> {
    if t < 2 {
        return constraint(format!("t = {t} must exceed 1"));
    }
    if (s + t).is_multiple_of(2) {
        return constraint(format!("s + t = {} must be odd", s + t));
    }
    if s < 2 {
        return constraint("s = 1 gives a divergent zeta(1) term; use euler_sigma1".into());
    }
    let w = s + t;
    let c = Rational::from(binomial(w, s));
    let mut tail = ClosedForm::zero();
    for j in 2..=(w - 1) / 2 {
        let coef = binomial(2 * j - 2, s - 1) + binomial(2 * j - 2, t - 1);
        tail.add_scaled(&Rational::from(coef), &zz(2 * j - 1, w - 2 * j + 1));
    }
    let mut out;
    if s % 2 == 1 {
        out = zeta(w).scaled(&((c - 1u32) / 2u32));
        out = &out + &zz(s, t);
        out = &out - &tail;
    } else {
        out = zeta(w).scaled(&(-(c + 1u32) / 2u32));
        out = &out + &tail;
    }
    Ok(out)
}

/// Readings of the inner factor of the double sum in the s_h(2, 2n-1) formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sh2Variant {
    /// The factor is absent.
    DropFactor,
    /// The factor is the integer k+1-j.
    IntegerMultiplier,
    /// The whole double sum is absent.
    NoDoubleSum,
}

/// s_h(2, 2n-1) for n >= 2 with the reading that matches computed values.
pub fn sh2_odd(n: u32) -> Result<ClosedForm, SymbolicError> {
    sh2_odd_variant(n, Sh2Variant::DropFactor)
}

pub fn sh2_odd_variant(n: u32, variant: Sh2Variant) -> Result<ClosedForm, SymbolicError> {
    if n < 2 {
        return constraint(format!("n = {n} must be at least 2"));
    }
    let n2 = (n * n) as i64 * 2 - 7 * n as i64 - 3;
    let mut out = zeta(2 * n + 1).scaled(&Rational::from((n2, 6)));
    out = &out + &zz(2, 2 * n - 1);
    for k in 1..=n - 2 {
        let c = Rational::from((-(2 * k as i64 - 1), 2));
        out.add_scaled(&c, &zz(2 * n - 1 - 2 * k, 2 * k + 2));
    }
    if variant != Sh2Variant::NoDoubleSum {
        for k in 1..=n.saturating_sub(2) {
            for j in 1..=(n - 2 - k) {
                let mult = match variant {
                    Sh2Variant::IntegerMultiplier => k as i64 + 1 - j as i64,
                    _ => 1,
                };
                if mult == 0 {
                    continue;
                }
                let term = &zz(2 * k + 1, 2 * j + 1) * &zeta(2 * n - 1 - 2 * k - 2 * j);
                out.add_scaled(&Rational::from((mult, 3)), &term);
            }
        }
    }
    Ok(out)
}

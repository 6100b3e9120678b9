use std::fmt;

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::Float;

use super::NumericsError;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision in decimal digits plus internal guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub working_digits: u32,
    pub guard_digits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 20;

    pub fn new(working_digits: u32) -> Result<Self, NumericsError> {
        Self::with_guard(working_digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(working_digits: u32, guard_digits: u32) -> Result<Self, NumericsError> {
        if working_digits < 30 {
            return Err(NumericsError::PrecisionTooLow(working_digits));
        }
        Ok(Self { working_digits, guard_digits })
    }

    /// Total digits carried internally.
    pub fn total_digits(&self) -> u32 {
        self.working_digits + self.guard_digits
    }

    /// Binary precision covering working + guard digits.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.total_digits())
    }

    /// A context with the same guard and `extra` more working digits.
    pub fn widened(&self, extra: u32) -> Self {
        Self { working_digits: self.working_digits + extra, guard_digits: self.guard_digits }
    }

    /// 10^-working_digits as a float at this context's precision.
    pub fn epsilon(&self) -> Float {
        ten_pow_neg(self.working_digits, self.bits())
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 16
}

pub(crate) fn ten_pow_neg(digits: u32, bits: u32) -> Float {
    use rug::ops::Pow;
    Float::with_val(bits, 10).pow(-(digits as i32))
}

/// A real number carried together with the number of decimal digits it is
/// claimed to be good to.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    value: Float,
    digits: u32,
}

impl BigReal {
    pub fn new(value: Float, digits: u32) -> Self {
        Self { value, digits }
    }

    pub fn from_f64(x: f64, digits: u32) -> Self {
        Self { value: Float::with_val(digits_to_bits(digits), x), digits }
    }

    /// Parses a plain or scientific decimal string.
    pub fn from_decimal(text: &str, digits: u32) -> Result<Self, NumericsError> {
        let parsed = Float::parse(text.trim()).map_err(|_| NumericsError::Parse(text.to_string()))?;
        let value = parsed.complete(digits_to_bits(digits));
        Ok(Self { value, digits })
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Fixed-point rendering with `sig` significant digits, no exponent for
    /// magnitudes between 1e-30 and 1e30.
    pub fn to_decimal(&self, sig: u32) -> String {
        format_significant(&self.value, sig)
    }

    /// Number of leading decimal digits on which `self` and `other` agree,
    /// measured relative to the larger magnitude.
    pub fn agreement_digits(&self, other: &Float) -> f64 {
        agreement_digits(&self.value, other)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.digits.max(1)))
    }
}

/// -log10 of the relative difference, capped at the precision of the inputs.
pub fn agreement_digits(a: &Float, b: &Float) -> f64 {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let scale = a.clone().abs().max(&b.clone().abs());
    let cap = prec as f64 / BITS_PER_DIGIT;
    if diff.is_zero() {
        return cap;
    }
    let scale = if scale.is_zero() { Float::with_val(prec, 1) } else { scale };
    let rel = Float::with_val(prec, &diff / &scale);
    (-log10_abs(&rel)).min(cap)
}

/// log10 |x| as an f64 that stays finite for exponents far outside f64 range.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mant, exp) = x.to_f64_exp();
    mant.abs().log10() + exp as f64 * std::f64::consts::LOG10_2
}

pub fn format_significant(x: &Float, sig: u32) -> String {
    format_with(x, sig, Round::Nearest)
}

/// Like `format_significant` but truncating toward zero, the way printed
/// tables usually cut digits.
pub fn format_truncated(x: &Float, sig: u32) -> String {
    format_with(x, sig, Round::Zero)
}

fn format_with(x: &Float, sig: u32, round: Round) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1) as usize;
    let (neg, digits, exp) = x.to_sign_string_exp_round(10, Some(sig), round);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    let exp = exp.unwrap_or(0) as i64;
    if !(-30..=30).contains(&exp) {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
    } else if exp <= 0 {
        out.push_str("0.");
        for _ in 0..(-exp) {
            out.push('0');
        }
        out.push_str(&digits);
    } else if exp as usize >= digits.len() {
        out.push_str(&digits);
        for _ in 0..(exp as usize - digits.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits[..exp as usize]);
        out.push('.');
        out.push_str(&digits[exp as usize..]);
    }
    out
}

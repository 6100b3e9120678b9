use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Assign, Float};
use thiserror::Error;

use super::{MixedSumSpec, SpecError};
use crate::harmonic::{
    exp_sinh, ghat_jet_with, ghat_value, log10_bernoulli_over, HarmonicError, HarmonicExpansion, Jet,
};
use crate::numerics::{bernoulli, binomial, euler_gamma, log10_abs, BigReal, PrecisionContext};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error("cutoff k = {0} is below the minimum of 1000")]
    CutoffTooSmall(u64),
    #[error("expansion order s = {0} out of range 1..=120")]
    EmOrder(u32),
    #[error("sum has affine factors; use eval_general")]
    NotIntegerShift,
    #[error("error estimate 1e{estimate_log10:.1} misses the requested {requested} digits")]
    AccuracyNotReached { estimate_log10: f64, requested: u32 },
}

/// Result of one high-precision evaluation.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub value: BigReal,
    pub requested_digits: u32,
    pub cutoff: u64,
    pub em_order: u32,
    pub error_estimate: BigReal,
    pub wall_time: Duration,
}

pub const MIN_CUTOFF: u64 = 1000;
const BLOCK: u64 = 1 << 16;
const MAX_SEED_ORDER: u32 = 100;

/// Evaluates an integer-shift mixed sum with explicit cutoff k and EM order s.
pub fn eval_mixed(spec: &MixedSumSpec, ctx: &PrecisionContext, k: u64, s: u32) -> Result<EvalReport, EvalError> {
    if !spec.is_integer_shift() {
        return Err(EvalError::NotIntegerShift);
    }
    eval_general(spec, ctx, k, s)
}

/// Evaluates a sum whose denominator may contain affine factors (a k + b)^e.
pub fn eval_general(spec: &MixedSumSpec, ctx: &PrecisionContext, k: u64, s: u32) -> Result<EvalReport, EvalError> {
    let started = Instant::now();
    if spec.degree() < 2 {
        return Err(SpecError::Divergent(spec.degree()).into());
    }
    if k < MIN_CUTOFF {
        return Err(EvalError::CutoffTooSmall(k));
    }
    if s == 0 || s > 120 {
        return Err(EvalError::EmOrder(s));
    }
    // extra digits absorb rounding over k terms and the size of H^m
    let extra = (k as f64).log10().ceil() as u32 + 3;
    let work = ctx.widened(extra);
    let bits = work.bits();
    let gamma = euler_gamma(&work).into_value();

    let partial = partial_sum(spec, k, &work, &gamma);

    let expansion = HarmonicExpansion::new(s);
    let a = Float::with_val(bits, k + 1);
    let integral = exp_sinh(|t| ghat_value(spec, t, &expansion, &gamma), &a, &work)?;
    let jet = ghat_jet_with(spec, &a, 2 * s as usize + 1, &expansion, &gamma);

    let mut value = partial;
    value += &integral;
    value += Float::with_val(bits, jet.coeff(0) / 2u32);
    for i in 1..=s {
        // B_2i D^(2i-1) G / (2i)! = B_2i c_(2i-1) / (2i)
        let b = Float::with_val(bits, &bernoulli(2 * i)) / (2 * i);
        value -= b * jet.coeff(2 * i as usize - 1);
    }

    let err = error_estimate(spec, k, s, &jet, &expansion, &gamma, &value, bits);
    let scale = value.clone().abs().max(&Float::with_val(bits, 1));
    let allowed = crate::numerics::ten_pow_neg(ctx.working_digits, bits) * &scale;
    if err > allowed {
        return Err(EvalError::AccuracyNotReached {
            estimate_log10: log10_abs(&err),
            requested: ctx.working_digits,
        });
    }
    Ok(EvalReport {
        value: BigReal::new(Float::with_val(ctx.bits(), &value), ctx.working_digits),
        requested_digits: ctx.working_digits,
        cutoff: k,
        em_order: s,
        error_estimate: BigReal::new(err, 20),
        wall_time: started.elapsed(),
    })
}

/// Picks (k, s) by the a-priori error model and evaluates.
pub fn eval_auto(spec: &MixedSumSpec, ctx: &PrecisionContext) -> Result<EvalReport, EvalError> {
    let (k, s) = choose_cutoff(spec, ctx.working_digits);
    eval_general(spec, ctx, k, s)
}

/// Smallest cutoff (rounded up to a multiple of 1000) whose modelled error
/// is below 10^-(digits+3), searching s in 21..=80.
pub fn choose_cutoff(spec: &MixedSumSpec, digits: u32) -> (u64, u32) {
    let target = -(digits as f64) - 3.0;
    let mut best: Option<(u64, u32)> = None;
    for s in (21..=80u32).step_by(3) {
        let mut lo = 3.0f64; // log10 k
        if model_log10_error(spec, 10f64.powf(lo), s) > target {
            let mut hi = lo;
            while model_log10_error(spec, 10f64.powf(hi), s) > target {
                hi += 1.0;
                if hi > 12.0 {
                    break;
                }
            }
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if model_log10_error(spec, 10f64.powf(mid), s) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo = hi;
        }
        let k = ((10f64.powf(lo) / 1000.0).ceil() as u64).max(1) * 1000;
        if best.is_none_or(|(bk, _)| k < bk) {
            best = Some((k, s));
        }
    }
    best.expect("search range is non-empty")
}

/// log10 of the modelled truncation error for cutoff k and order s.
pub fn model_log10_error(spec: &MixedSumSpec, k: f64, s: u32) -> f64 {
    let d = spec.degree();
    let n = 2 * s + 1;
    let h = (k.ln() + 0.5772156649 + 1.0).log10();
    let binom = log10_binomial(d + n - 1, n);
    let em = log10_bernoulli_over(2 * s + 2) + binom + spec.m() as f64 * h - (d + n) as f64 * k.log10();
    let spread: f64 = spec.factors().iter().map(|f| -(f.e as f64) * (f.a as f64).log10()).sum();
    let hat = (spec.m().max(1) as f64).log10() + (spec.m().saturating_sub(1)) as f64 * h
        + log10_bernoulli_over(2 * s + 2)
        - (2 * s + 1 + d) as f64 * k.log10();
    em.max(hat) + spread.max(0.0) + 1.0
}

fn log10_binomial(n: u32, k: u32) -> f64 {
    let b = binomial(n, k);
    log10_abs(&Float::with_val(64, &b))
}

#[allow(clippy::too_many_arguments)]
fn error_estimate(
    spec: &MixedSumSpec,
    k: u64,
    s: u32,
    jet: &Jet,
    expansion: &HarmonicExpansion,
    gamma: &Float,
    value: &Float,
    bits: u32,
) -> Float {
    let n = 2 * s + 2;
    let b = Float::with_val(bits, &bernoulli(n)).abs() / n;
    let mut err = Float::with_val(bits, &b * jet.coeff(2 * s as usize + 1)).abs();
    // H-hat remainder inside the tail: m H^(m-1) |R_s| summed over j > k
    if spec.m() > 0 {
        let kf = Float::with_val(bits, k);
        let h = expansion.evaluate(&kf, gamma);
        let d = spec.degree();
        let mut r = Float::with_val(bits, &b) * spec.m();
        r *= Float::with_val(bits, (&h).pow(spec.m() - 1));
        r /= Float::with_val(bits, (&kf).pow(2 * s + 1 + d));
        r /= 2 * s + 1 + d;
        for f in spec.factors() {
            r /= Float::with_val(bits, f.a).pow(f.e);
        }
        err += r * 2u32;
    }
    // rounding in the explicit sum
    let ulp = Float::with_val(bits, 2).pow(-(bits as i32));
    let ops = (spec.m() + spec.degree() + 3) as u64 * k;
    err += ulp * value.clone().abs() * ops;
    err
}

/// Smallest n at which H-hat with some order <= 100 reproduces H_n to the
/// working precision, and that order.
fn seed_threshold(total_digits: u32) -> (u64, u32) {
    let target = -(total_digits as f64) - 5.0;
    let mut n = 100u64;
    loop {
        let lg = (n as f64).log10();
        for s in (10..=MAX_SEED_ORDER).step_by(10) {
            let b = log10_bernoulli_over(2 * s + 2) - (2 * s + 2) as f64 * lg;
            if b < target {
                return (n, s);
            }
        }
        n *= 2;
    }
}

/// sum_{j=1}^{k} H_j^m / D(j) in floating point with working+guard bits.
/// Blocks after the seeding threshold start from H-hat and are summed in
/// parallel, then combined in block order.
pub(crate) fn partial_sum(spec: &MixedSumSpec, k: u64, ctx: &PrecisionContext, gamma: &Float) -> Float {
    let bits = ctx.bits();
    let (threshold, seed_s) = seed_threshold(ctx.total_digits());
    let seed_exp = HarmonicExpansion::new(seed_s);

    let blocks: Vec<(u64, u64)> = (0..k.div_ceil(BLOCK))
        .map(|b| (b * BLOCK + 1, ((b + 1) * BLOCK).min(k)))
        .collect();

    let mut total = Float::new(bits);
    let mut h = Float::new(bits);
    let mut serial_end = 0usize;
    for (i, &(lo, hi)) in blocks.iter().enumerate() {
        if lo > threshold + 1 {
            break;
        }
        let (sum, h_end) = block_sum(spec, lo, hi, h, bits);
        total += &sum;
        h = h_end;
        serial_end = i + 1;
    }
    let rest: Vec<Float> = blocks[serial_end..]
        .par_iter()
        .map(|&(lo, hi)| {
            let seed = seed_exp.evaluate(&Float::with_val(bits, lo - 1), gamma);
            block_sum(spec, lo, hi, seed, bits).0
        })
        .collect();
    for part in &rest {
        total += part;
    }
    total
}

/// Sums terms lo..=hi given H_(lo-1); returns the sum and H_hi.
fn block_sum(spec: &MixedSumSpec, lo: u64, hi: u64, h_prev: Float, bits: u32) -> (Float, Float) {
    let m = spec.m();
    let factors = spec.factors();
    let mut h = h_prev;
    let mut inv = Float::new(bits);
    let mut num = Float::new(bits);
    let mut den = Float::new(bits);
    let mut acc = Float::new(bits);
    for j in lo..=hi {
        inv.assign(j);
        inv.recip_mut();
        h += &inv;
        num.assign(1);
        for _ in 0..m {
            num *= &h;
        }
        den.assign(1);
        for f in factors {
            let base = f.a as u64 * j + f.b as u64;
            for _ in 0..f.e {
                den *= base;
            }
        }
        num /= &den;
        acc += &num;
    }
    (acc, h)
}

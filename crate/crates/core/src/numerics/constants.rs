use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::real::{BigReal, PrecisionContext};
use super::{bernoulli, NumericsError};

/// Euler's constant to the context's working digits (carried with guard bits).
pub fn euler_gamma(ctx: &PrecisionContext) -> BigReal {
    BigReal::new(Float::with_val(ctx.bits(), Constant::Euler), ctx.working_digits)
}

pub fn log2(ctx: &PrecisionContext) -> BigReal {
    BigReal::new(Float::with_val(ctx.bits(), Constant::Log2), ctx.working_digits)
}

pub fn pi(ctx: &PrecisionContext) -> BigReal {
    BigReal::new(Float::with_val(ctx.bits(), Constant::Pi), ctx.working_digits)
}

pub fn zeta(s: u32, ctx: &PrecisionContext) -> Result<BigReal, NumericsError> {
    Ok(BigReal::new(zeta_float(s, ctx.bits())?, ctx.working_digits))
}

fn zeta_cache() -> &'static Mutex<HashMap<(u32, u32), Float>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// zeta(s) at `bits` of binary precision. Even arguments use the Bernoulli
/// closed form, odd ones an Euler-Maclaurin accelerated direct sum.
pub fn zeta_float(s: u32, bits: u32) -> Result<Float, NumericsError> {
    if s < 2 {
        return Err(NumericsError::ZetaArgument(s));
    }
    if let Some(v) = zeta_cache().lock().expect("zeta cache poisoned").get(&(s, bits)) {
        return Ok(v.clone());
    }
    let v = if s.is_multiple_of(2) { zeta_even(s, bits) } else { zeta_em(s, bits) };
    zeta_cache().lock().expect("zeta cache poisoned").insert((s, bits), v.clone());
    Ok(v)
}

fn zeta_even(s: u32, bits: u32) -> Float {
    let work = bits + 32;
    let two_pi = Float::with_val(work, Constant::Pi) * 2u32;
    let b = bernoulli(s).abs();
    let fact = Integer::from(Integer::factorial(s));
    let num = Float::with_val(work, two_pi.pow(s)) * Float::with_val(work, &b);
    let den = Float::with_val(work, &fact) * 2u32;
    Float::with_val(bits, num / den)
}

fn zeta_em(s: u32, bits: u32) -> Float {
    let work = bits + 32;
    let digits = bits as f64 * std::f64::consts::LOG10_2;
    let n = (0.37 * digits).ceil() as u32 + 10 + s;
    let eps = Float::with_val(work, 2).pow(-(work as i32));

    let mut sum = Float::with_val(work, 0);
    for k in 1..n {
        let p = Float::with_val(work, k).pow(s);
        sum += p.recip();
    }
    let nf = Float::with_val(work, n);
    // N^(1-s)/(s-1) + N^(-s)/2
    let n_pow = Float::with_val(work, (&nf).pow(s));
    let inv_ns = n_pow.recip();
    sum += Float::with_val(work, &inv_ns * &nf) / (s - 1);
    sum += Float::with_val(work, &inv_ns / 2u32);

    // + sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    let inv_n2 = Float::with_val(work, (&nf).pow(2)).recip();
    let mut power = Float::with_val(work, &inv_ns * &nf); // N^(1-s)
    let mut rising = Float::with_val(work, 1); // s(s+1)...(s+2j-2) / (2j)!
    let mut prev = None::<Float>;
    let mut j = 1u32;
    loop {
        // update rising factor: multiply by (s+2j-3)(s+2j-2)/((2j-1)(2j)) for j>1, s/2 for j=1
        if j == 1 {
            rising *= s;
            rising /= 2u32;
        } else {
            rising *= s + 2 * j - 3;
            rising *= s + 2 * j - 2;
            rising /= (2 * j - 1) * (2 * j);
        }
        power *= &inv_n2;
        let b = Float::with_val(work, &bernoulli(2 * j));
        let term = Float::with_val(work, &b * &rising) * &power;
        let mag = term.clone().abs();
        if let Some(p) = &prev {
            if mag > *p {
                break;
            }
        }
        sum += &term;
        if mag < Float::with_val(work, &eps * &sum) {
            break;
        }
        prev = Some(mag);
        j += 1;
    }
    Float::with_val(bits, sum)
}

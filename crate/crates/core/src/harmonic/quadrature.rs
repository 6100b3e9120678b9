use rug::float::Constant;
use rug::Float;

use super::HarmonicError;
use crate::numerics::PrecisionContext;

const MAX_LEVELS: u32 = 14;

/// Integral of `f` over [a, inf) by the exp-sinh transform
/// t = a + exp((pi/2) sinh u), trapezoid rule with step halving.
///
/// Stops when two successive levels agree to 10^-(working + guard/2)
/// relative to the estimate.
pub fn exp_sinh<F>(f: F, a: &Float, ctx: &PrecisionContext) -> Result<Float, HarmonicError>
where
    F: Fn(&Float) -> Float,
{
    let bits = ctx.bits();
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    let tol = crate::numerics::ten_pow_neg(ctx.working_digits + ctx.guard_digits / 2, bits);
    let negligible = crate::numerics::ten_pow_neg(ctx.total_digits() + 5, bits);

    let node = |u: &Float| -> Float {
        let e = Float::with_val(bits, u.sinh_ref()) * &half_pi;
        let e = e.exp();
        let t = Float::with_val(bits, a + &e);
        let w = Float::with_val(bits, u.cosh_ref()) * &half_pi * &e;
        let v = f(&t) * w;
        if v.is_finite() { v } else { Float::new(bits) }
    };

    // sum of node(k h) over k = first, first+stride, ... in one direction
    let sweep = |h: &Float, first: i64, stride: i64, scale: &Float| -> Float {
        let mut acc = Float::new(bits);
        let mut k = first;
        let mut quiet = 0;
        loop {
            let u = Float::with_val(bits, h * k);
            let v = node(&u);
            let small = Float::with_val(bits, v.abs_ref()) * h <= Float::with_val(bits, scale * &negligible);
            acc += &v;
            quiet = if small { quiet + 1 } else { 0 };
            if quiet >= 2 || u.clone().abs() > 12 {
                break;
            }
            k += stride;
        }
        acc
    };

    let mut h = Float::with_val(bits, 0.5);
    let center = node(&Float::new(bits));
    let mut scale = Float::with_val(bits, center.abs_ref()).max(&Float::with_val(bits, 1e-300));
    let mut raw = center;
    raw += sweep(&h, 1, 1, &scale);
    raw += sweep(&h, -1, -1, &scale);
    let mut estimate = Float::with_val(bits, &raw * &h);

    for _ in 0..MAX_LEVELS {
        h /= 2u32;
        scale = Float::with_val(bits, estimate.abs_ref());
        raw += sweep(&h, 1, 2, &scale);
        raw += sweep(&h, -1, -2, &scale);
        let next = Float::with_val(bits, &raw * &h);
        let diff = Float::with_val(bits, &next - &estimate).abs();
        estimate = next;
        if diff <= Float::with_val(bits, &tol * &scale) {
            return Ok(estimate);
        }
    }
    Err(HarmonicError::Quadrature { levels: MAX_LEVELS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{agreement_digits, euler_gamma};

    #[test]
    fn inverse_square() {
        let ctx = PrecisionContext::new(60).unwrap();
        let a = Float::with_val(ctx.bits(), 10);
        let v = exp_sinh(|t| Float::with_val(t.prec(), t.square_ref()).recip(), &a, &ctx).unwrap();
        assert!(agreement_digits(&v, &Float::with_val(ctx.bits(), 10).recip()) > 62.0);
    }

    #[test]
    fn log_power_integral() {
        // int_1^inf (log t + gamma)^3 / t^2 dt = 3! [e^gamma]_3
        let ctx = PrecisionContext::new(40).unwrap();
        let g = euler_gamma(&ctx).into_value();
        let one = Float::with_val(ctx.bits(), 1);
        let v = exp_sinh(
            |t| {
                let l = Float::with_val(t.prec(), t.ln_ref()) + &g;
                Float::with_val(t.prec(), l.pow_ref_u(3)) / Float::with_val(t.prec(), t.square_ref())
            },
            &one,
            &ctx,
        )
        .unwrap();
        assert_eq!(crate::numerics::format_truncated(&v, 11), "10.655143277");
        let g2 = Float::with_val(ctx.bits(), g.square_ref());
        let g3 = Float::with_val(ctx.bits(), &g2 * &g);
        let exact = (Float::with_val(ctx.bits(), 1) + &g + g2 / 2u32 + g3 / 6u32) * 6u32;
        assert!(agreement_digits(&v, &exact) > 40.0);
    }

    trait PowU {
        fn pow_ref_u(&self, n: u32) -> Float;
    }
    impl PowU for Float {
        fn pow_ref_u(&self, n: u32) -> Float {
            Float::with_val(self.prec(), rug::ops::Pow::pow(self, n))
        }
    }
}

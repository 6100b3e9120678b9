use rug::ops::Pow;
use rug::Float;

use super::{exp_sinh, HarmonicError, HarmonicExpansion, Jet, ASYMPTOTIC_MIN_T};
use crate::numerics::{euler_gamma, BigReal, PrecisionContext};
use crate::sums::MixedSumSpec;

/// G-hat(t) = H-hat(t)^m / prod (a t + b)^e.
pub fn ghat_value(spec: &MixedSumSpec, t: &Float, expansion: &HarmonicExpansion, gamma: &Float) -> Float {
    let prec = gamma.prec();
    let h = expansion.evaluate(t, gamma);
    let mut v = Float::with_val(prec, h.pow(spec.m()));
    for f in spec.factors() {
        let base = Float::with_val(prec, t * f.a) + f.b;
        v /= base.pow(f.e);
    }
    v
}

/// Taylor jet of H-hat about `a`.
pub(crate) fn harmonic_jet(expansion: &HarmonicExpansion, a: &Float, order: usize, gamma: &Float) -> Jet {
    let prec = a.prec();
    let mut coeffs: Vec<Float> = Jet::log_shift(a, order).coeffs().to_vec();
    coeffs[0] += gamma;
    let half = Float::with_val(prec, 0.5);
    let r1 = Jet::recip_power(1, a, order);
    for (c, r) in coeffs.iter_mut().zip(r1.coeffs()) {
        *c += Float::with_val(prec, r * &half);
    }
    for (j, cj) in expansion.coefficients().iter().enumerate() {
        let cj = Float::with_val(prec, cj);
        let rj = Jet::recip_power(2 * (j as u32 + 1), a, order);
        for (c, r) in coeffs.iter_mut().zip(rj.coeffs()) {
            *c += Float::with_val(prec, r * &cj);
        }
    }
    Jet::from_coeffs(coeffs)
}

/// Jet of G-hat about `a` through order K; D^j G-hat(a) = j! c_j.
pub fn ghat_jet(
    spec: &MixedSumSpec,
    a: &Float,
    order: usize,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Jet, HarmonicError> {
    if spec.factors().is_empty() {
        return Err(HarmonicError::Degenerate);
    }
    let max = 2 * s as usize + 1;
    if order > max {
        return Err(HarmonicError::JetOrder { order, max });
    }
    let gamma = euler_gamma(ctx).into_value();
    let a = Float::with_val(ctx.bits(), a);
    Ok(ghat_jet_with(spec, &a, order, &HarmonicExpansion::new(s), &gamma))
}

pub(crate) fn ghat_jet_with(
    spec: &MixedSumSpec,
    a: &Float,
    order: usize,
    expansion: &HarmonicExpansion,
    gamma: &Float,
) -> Jet {
    let mut jet = harmonic_jet(expansion, a, order, gamma).powi(spec.m());
    for f in spec.factors() {
        jet = jet.mul_ref(&Jet::affine_recip_power(f.a, f.b, f.e, a, order));
    }
    jet
}

/// Integral of G-hat over [a, inf) by exp-sinh quadrature.
pub fn tail_integral(
    spec: &MixedSumSpec,
    a: &Float,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<BigReal, HarmonicError> {
    if *a < ASYMPTOTIC_MIN_T {
        return Err(HarmonicError::BelowThreshold { t: a.to_f64(), min: ASYMPTOTIC_MIN_T });
    }
    if spec.degree() < 2 {
        return Err(HarmonicError::Degenerate);
    }
    let gamma = euler_gamma(ctx).into_value();
    let expansion = HarmonicExpansion::new(s);
    let a = Float::with_val(ctx.bits(), a);
    let v = exp_sinh(|t| ghat_value(spec, t, &expansion, &gamma), &a, ctx)?;
    Ok(BigReal::new(v, ctx.working_digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_exact;
    use crate::numerics::{agreement_digits, bernoulli};
    use crate::sums::Factor;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn inverse_square_jet() {
        let c = ctx(40);
        let spec = MixedSumSpec::basic(0, 2).unwrap();
        let a = Float::with_val(c.bits(), 10);
        let j = ghat_jet(&spec, &a, 3, 21, &c).unwrap();
        let expect = [1e-2, -2e-3, 3e-4, -4e-5];
        for (i, e) in expect.iter().enumerate() {
            assert!((j.coeff(i).to_f64() - e).abs() < 1e-18);
        }
    }

    #[test]
    fn rejects_excess_order_and_empty_spec() {
        let c = ctx(30);
        let spec = MixedSumSpec::basic(1, 2).unwrap();
        let a = Float::with_val(c.bits(), 50);
        assert!(matches!(ghat_jet(&spec, &a, 44, 21, &c), Err(HarmonicError::JetOrder { .. })));
        let empty = MixedSumSpec::formal(1, vec![]);
        assert_eq!(ghat_jet(&empty, &a, 3, 21, &c), Err(HarmonicError::Degenerate));
    }

    #[test]
    fn harmonic_jet_first_coefficient_termwise() {
        // d/dt H-hat = 1/t - 1/(2t^2) - sum 2j c_j / t^(2j+1), c_j = -B_2j/(2j)
        let c = ctx(60);
        let a = Float::with_val(c.bits(), 100);
        let e = HarmonicExpansion::new(21);
        let g = euler_gamma(&c).into_value();
        let j = harmonic_jet(&e, &a, 3, &g);
        let mut d = Float::with_val(c.bits(), a.recip_ref());
        d -= Float::with_val(c.bits(), a.square_ref()).recip() / 2u32;
        for k in 1..=21u32 {
            let b = Float::with_val(c.bits(), &bernoulli(2 * k));
            d += b / Float::with_val(c.bits(), (&a).pow(2 * k + 1));
        }
        assert!(agreement_digits(j.coeff(1), &d) > 60.0);
    }

    #[test]
    fn jet_derivatives_match_central_differences() {
        // oracle: central differences at 200 digits with h = 1e-10
        let hi = ctx(200);
        let lo = ctx(60);
        let h = Float::with_val(hi.bits(), 1e-10);
        let specs = [
            MixedSumSpec::basic(1, 2).unwrap(),
            MixedSumSpec::mixed(2, &[1, 0, 3]).unwrap(),
            MixedSumSpec::mixed(3, &[0, 2, 1]).unwrap(),
            MixedSumSpec::general(1, vec![Factor { a: 2, b: 1, e: 2 }]).unwrap(),
        ];
        let e = HarmonicExpansion::new(21);
        let g_hi = euler_gamma(&hi).into_value();
        let g_lo = euler_gamma(&lo).into_value();
        for spec in &specs {
            let a_lo = Float::with_val(lo.bits(), 50);
            let jet = ghat_jet_with(spec, &a_lo, 7, &e, &g_lo);
            let a = Float::with_val(hi.bits(), 50);
            let f = |x: &Float| ghat_value(spec, x, &e, &g_hi);
            for order in 1..=7usize {
                let fd = central_difference(&f, &a, &h, order);
                let d = jet.derivative(order);
                let rel = ((fd.to_f64() - d.to_f64()) / d.to_f64()).abs();
                assert!(rel < 1e-8, "{spec} order {order}: rel {rel:e}");
            }
        }
    }

    // sum_{i} (-1)^i C(n,i) f(a + (n/2 - i) h) / h^n
    fn central_difference(f: &dyn Fn(&Float) -> Float, a: &Float, h: &Float, n: usize) -> Float {
        let prec = a.prec();
        let mut acc = Float::new(prec);
        for i in 0..=n {
            let offset = Float::with_val(prec, h * (n as f64 / 2.0 - i as f64));
            let x = Float::with_val(prec, a + &offset);
            let c = Float::with_val(prec, &crate::numerics::binomial(n as u32, i as u32));
            let term = f(&x) * c;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc / Float::with_val(prec, h.pow(n as u32))
    }

    #[test]
    fn tail_of_inverse_square() {
        let c = ctx(50);
        let spec = MixedSumSpec::basic(0, 2).unwrap();
        let a = Float::with_val(c.bits(), 10);
        let v = tail_integral(&spec, &a, 21, &c).unwrap();
        assert!(v.agreement_digits(&Float::with_val(c.bits(), 10).recip()) > 50.0);
    }

    #[test]
    fn tail_of_h_over_square_matches_antiderivative() {
        // int_a^inf H-hat/t^2 = (gamma + log a + 1)/a + 1/(4a^2) + sum c_j/((2j+1) a^(2j+1))
        let c = ctx(60);
        let spec = MixedSumSpec::basic(1, 2).unwrap();
        let a = Float::with_val(c.bits(), 100);
        let v = tail_integral(&spec, &a, 21, &c).unwrap();
        let e = HarmonicExpansion::new(21);
        let g = euler_gamma(&c).into_value();
        let mut exact = Float::with_val(c.bits(), a.ln_ref()) + &g + 1u32;
        exact /= &a;
        exact += Float::with_val(c.bits(), a.square_ref()).recip() / 4u32;
        for j in 1..=21u32 {
            let cj = Float::with_val(c.bits(), e.coefficient(j));
            exact += cj / Float::with_val(c.bits(), (&a).pow(2 * j + 1)) / (2 * j + 1);
        }
        assert!(v.agreement_digits(&exact) > 60.0);
    }

    #[test]
    fn tail_additivity() {
        let c = ctx(40);
        let spec = MixedSumSpec::mixed(2, &[1, 2]).unwrap();
        let a = Float::with_val(c.bits(), 20);
        let b = Float::with_val(c.bits(), 35);
        let ia = tail_integral(&spec, &a, 21, &c).unwrap();
        let ib = tail_integral(&spec, &b, 21, &c).unwrap();
        // int_a^b by composite Simpson
        let e = HarmonicExpansion::new(21);
        let g = euler_gamma(&c).into_value();
        let n = 4000u32;
        let hstep = Float::with_val(c.bits(), &b - &a) / n;
        let mut simpson = Float::new(c.bits());
        for i in 0..=n {
            let x = Float::with_val(c.bits(), &hstep * i) + &a;
            let w = if i == 0 || i == n { 1 } else if i % 2 == 1 { 4 } else { 2 };
            simpson += ghat_value(&spec, &x, &e, &g) * w;
        }
        simpson *= &hstep;
        simpson /= 3u32;
        let lhs = Float::with_val(c.bits(), ia.value() - ib.value());
        assert!(agreement_digits(&lhs, &simpson) > 14.0);
    }

    #[test]
    fn direct_summation_oracle_for_h_over_square() {
        // sum_{k>100} H_k/k^2 summed directly to 10^6 plus the leading tail
        let c = ctx(40);
        let spec = MixedSumSpec::basic(1, 2).unwrap();
        let e = HarmonicExpansion::new(21);
        let g = euler_gamma(&c).into_value();
        let a = Float::with_val(c.bits(), 101);
        let tail = tail_integral(&spec, &a, 21, &c).unwrap().into_value();
        let g101 = ghat_value(&spec, &a, &e, &g);
        let jet = ghat_jet_with(&spec, &a, 3, &e, &g);
        let em = tail + g101 / 2u32 - Float::with_val(c.bits(), jet.coeff(1)) / 12u32;
        let mut direct = 0.0f64;
        let mut h = harmonic_exact(100).to_f64();
        for k in 101..=1_000_000u64 {
            h += 1.0 / k as f64;
            direct += h / (k as f64 * k as f64);
        }
        let n = 1.0e6f64;
        direct += (n.ln() + 0.5772156649015329 + 1.0) / n;
        assert!((em.to_f64() - direct).abs() < 1e-9);
    }
}

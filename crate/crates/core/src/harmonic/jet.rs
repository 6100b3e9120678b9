use std::ops::{Add, Mul, Sub};

use rug::{Assign, Float};

/// Truncated Taylor series sum_{i<=K} c_i x^i about a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<Float>,
}

impl Jet {
    pub fn from_coeffs(coeffs: Vec<Float>) -> Self {
        assert!(!coeffs.is_empty(), "jet needs at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(c: Float, order: usize) -> Self {
        let prec = c.prec();
        let mut coeffs = vec![Float::new(prec); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Float {
        &self.coeffs[i]
    }

    /// D^j f(a) = j! c_j.
    pub fn derivative(&self, j: usize) -> Float {
        let mut d = self.coeffs[j].clone();
        for k in 2..=j as u32 {
            d *= k;
        }
        d
    }

    /// log(a + x).
    pub fn log_shift(a: &Float, order: usize) -> Self {
        let prec = a.prec();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(Float::with_val(prec, a.ln_ref()));
        let inv = Float::with_val(prec, a.recip_ref());
        let mut p = Float::with_val(prec, 1);
        for i in 1..=order {
            p *= &inv;
            let mut c = Float::with_val(prec, &p / i as u32);
            if i % 2 == 0 {
                c = -c;
            }
            coeffs.push(c);
        }
        Self { coeffs }
    }

    /// (alpha (a + x) + beta)^(-e); c_i = C(e+i-1, i) (-alpha)^i / (alpha a + beta)^(e+i).
    pub fn affine_recip_power(alpha: u32, beta: u32, e: u32, a: &Float, order: usize) -> Self {
        let prec = a.prec();
        let base = Float::with_val(prec, a * alpha) + beta;
        let inv = Float::with_val(prec, base.recip_ref());
        let mut c = Float::with_val(prec, rug::ops::Pow::pow(&inv, e));
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(c.clone());
        for i in 1..=order as u32 {
            c *= &inv;
            c *= alpha * (e + i - 1);
            c /= i;
            c = -c;
            coeffs.push(c.clone());
        }
        Self { coeffs }
    }

    /// (a + x)^(-n).
    pub fn recip_power(n: u32, a: &Float, order: usize) -> Self {
        Self::affine_recip_power(1, 0, n, a, order)
    }

    pub fn scale(&self, k: &Float) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| Float::with_val(c.prec(), c * k)).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul_ref(&self, other: &Jet) -> Jet {
        let k = self.order().min(other.order());
        let prec = self.prec().max(other.prec());
        let mut out = Vec::with_capacity(k + 1);
        let mut t = Float::new(prec);
        for n in 0..=k {
            let mut acc = Float::new(prec);
            for i in 0..=n {
                t.assign(&self.coeffs[i] * &other.coeffs[n - i]);
                acc += &t;
            }
            out.push(acc);
        }
        Jet { coeffs: out }
    }

    pub fn powi(&self, m: u32) -> Jet {
        let mut result = Jet::constant(Float::with_val(self.prec(), 1), self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// 1/f, requires f(a) != 0.
    pub fn recip(&self) -> Jet {
        let prec = self.prec();
        let inv0 = Float::with_val(prec, self.coeffs[0].recip_ref());
        let mut g: Vec<Float> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = Float::new(prec);
            for k in 1..=n {
                acc += Float::with_val(prec, &self.coeffs[k] * &g[n - k]);
            }
            g.push(-acc * &inv0);
        }
        Jet { coeffs: g }
    }

    /// log f, requires f(a) > 0.
    pub fn ln(&self) -> Jet {
        let prec = self.prec();
        let f0 = &self.coeffs[0];
        let mut l: Vec<Float> = vec![Float::with_val(prec, f0.ln_ref())];
        for n in 1..=self.order() {
            let mut acc = Float::with_val(prec, &self.coeffs[n] * n as u32);
            for (k, lk) in l.iter().enumerate().take(n).skip(1) {
                let t = Float::with_val(prec, lk * &self.coeffs[n - k]) * k as u32;
                acc -= t;
            }
            l.push(acc / f0 / n as u32);
        }
        Jet { coeffs: l }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let k = self.order().min(rhs.order());
        Jet {
            coeffs: (0..=k)
                .map(|i| Float::with_val(self.prec(), &self.coeffs[i] + &rhs.coeffs[i]))
                .collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let k = self.order().min(rhs.order());
        Jet {
            coeffs: (0..=k)
                .map(|i| Float::with_val(self.prec(), &self.coeffs[i] - &rhs.coeffs[i]))
                .collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_ref(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: f64) -> Float {
        Float::with_val(200, x)
    }

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn reciprocal_square_at_ten() {
        let j = Jet::recip_power(2, &f(10.0), 4);
        assert!(close(j.coeff(0), 1e-2, 1e-15));
        assert!(close(j.coeff(1), -2e-3, 1e-15));
        assert!(close(j.coeff(2), 3e-4, 1e-15));
        assert!(close(j.coeff(3), -4e-5, 1e-15));
    }

    #[test]
    fn general_recip_and_ln_agree_with_closed_forms() {
        let a = f(3.0);
        let lin = Jet::from_coeffs(vec![a.clone(), f(1.0), f(0.0), f(0.0), f(0.0), f(0.0)]);
        let r = lin.recip();
        let direct = Jet::recip_power(1, &a, 5);
        let l = lin.ln();
        let ldirect = Jet::log_shift(&a, 5);
        for i in 0..=5 {
            assert!(close(r.coeff(i), direct.coeff(i).to_f64(), 1e-14));
            assert!(close(l.coeff(i), ldirect.coeff(i).to_f64(), 1e-14));
        }
    }

    #[test]
    fn power_matches_repeated_product() {
        let a = f(5.0);
        let base = &Jet::log_shift(&a, 6) + &Jet::recip_power(1, &a, 6);
        let p = base.powi(5);
        let mut q = base.clone();
        for _ in 0..4 {
            q = &q * &base;
        }
        for i in 0..=6 {
            assert!(close(p.coeff(i), q.coeff(i).to_f64(), 1e-13));
        }
    }

    #[test]
    fn affine_factor_matches_composition() {
        // (2(a+x)+1)^-3 = 2^-3 (a + 1/2 + x)^-3
        let a = f(7.0);
        let j = Jet::affine_recip_power(2, 1, 3, &a, 5);
        let k = Jet::recip_power(3, &f(7.5), 5).scale(&f(0.125));
        for i in 0..=5 {
            assert!(close(j.coeff(i), k.coeff(i).to_f64(), 1e-14));
        }
    }

    #[test]
    fn derivative_scales_by_factorial() {
        let j = Jet::recip_power(1, &f(1.0), 4);
        // d^3/dx^3 (1+x)^-1 = -6
        assert!(close(&j.derivative(3), -6.0, 1e-15));
    }
}

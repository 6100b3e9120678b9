use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("denominator degree {0} < 2: the sum diverges")]
    Divergent(u32),
    #[error("factor ({a}k+{b}) has a zero leading coefficient")]
    ZeroSlope { a: u32, b: u32 },
    #[error("order is only defined for integer-shift denominators")]
    AffineOrder,
    #[error("denominator has degree 0")]
    EmptyDenominator,
}

/// One denominator factor (a*k + b)^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub a: u32,
    pub b: u32,
    pub e: u32,
}

impl Factor {
    pub fn shift(w: u32, e: u32) -> Self {
        Self { a: 1, b: w, e }
    }
}

/// sum_{k>=1} H(k)^m / prod (a k + b)^e.
///
/// Factors are kept sorted by (a, b) with equal bases merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedSumSpec {
    m: u32,
    factors: Vec<Factor>,
}

impl MixedSumSpec {
    /// M(m, n0, n1, ...) with denominator k^n0 (k+1)^n1 ...
    pub fn mixed(m: u32, exponents: &[u32]) -> Result<Self, SpecError> {
        let factors = exponents
            .iter()
            .enumerate()
            .map(|(w, &e)| Factor::shift(w as u32, e))
            .collect();
        Self::general(m, factors)
    }

    /// I(m, n) = M(m, n).
    pub fn basic(m: u32, n: u32) -> Result<Self, SpecError> {
        Self::mixed(m, &[n])
    }

    /// s_h(m, n) = M(m, 0, n).
    pub fn s_h(m: u32, n: u32) -> Result<Self, SpecError> {
        Self::mixed(m, &[0, n])
    }

    pub fn general(m: u32, factors: Vec<Factor>) -> Result<Self, SpecError> {
        if let Some(f) = factors.iter().find(|f| f.a == 0 && f.e > 0) {
            return Err(SpecError::ZeroSlope { a: f.a, b: f.b });
        }
        let spec = Self::formal(m, factors);
        let d = spec.degree();
        if d < 2 {
            return Err(SpecError::Divergent(d));
        }
        Ok(spec)
    }

    /// Builds a spec without the convergence check; the reducer uses these
    /// for intermediate pieces such as H(k)^m/(k+w).
    pub(crate) fn formal(m: u32, mut factors: Vec<Factor>) -> Self {
        factors.retain(|f| f.e > 0);
        factors.sort_by_key(|f| (f.a, f.b));
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            match merged.last_mut() {
                Some(last) if last.a == f.a && last.b == f.b => last.e += f.e,
                _ => merged.push(f),
            }
        }
        Self { m, factors: merged }
    }

    /// H(k)^m/(k+w)^e, without the convergence check.
    pub fn single(m: u32, w: u32, e: u32) -> Self {
        Self::formal(m, vec![Factor::shift(w, e)])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total denominator degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.e).sum()
    }

    pub fn is_integer_shift(&self) -> bool {
        self.factors.iter().all(|f| f.a == 1)
    }

    /// (w, e) pairs for an integer-shift spec.
    pub fn shifts(&self) -> Option<Vec<(u32, u32)>> {
        self.is_integer_shift()
            .then(|| self.factors.iter().map(|f| (f.b, f.e)).collect())
    }

    /// Exponent list n0, n1, ..., nt of an integer-shift spec.
    pub fn exponents(&self) -> Option<Vec<u32>> {
        let shifts = self.shifts()?;
        let t = shifts.iter().map(|&(w, _)| w).max().unwrap_or(0);
        let mut out = vec![0; t as usize + 1];
        for (w, e) in shifts {
            out[w as usize] = e;
        }
        Some(out)
    }

    /// r = m + n0 + ... + nt.
    pub fn order(&self) -> Result<u32, SpecError> {
        if !self.is_integer_shift() {
            return Err(SpecError::AffineOrder);
        }
        if self.degree() == 0 {
            return Err(SpecError::EmptyDenominator);
        }
        Ok(self.m + self.degree())
    }

    /// Is this M(m, n) with only a k^n denominator?
    pub fn as_basic(&self) -> Option<(u32, u32)> {
        match self.factors.as_slice() {
            [Factor { a: 1, b: 0, e }] => Some((self.m, *e)),
            _ => None,
        }
    }

    /// Exact value of the k-th denominator.
    pub fn denominator_at(&self, k: u64) -> rug::Integer {
        use rug::ops::Pow;
        let mut d = rug::Integer::from(1);
        for f in &self.factors {
            let base = rug::Integer::from(f.a) * k + f.b;
            d *= base.pow(f.e);
        }
        d
    }
}

impl fmt::Display for MixedSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ns) = self.exponents() {
            let list: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
            write!(f, "M({};{})", self.m, list.join(","))
        } else {
            let list: Vec<String> = self
                .factors
                .iter()
                .map(|x| format!("({},{},{})", x.a, x.b, x.e))
                .collect();
            write!(f, "S({};{})", self.m, list.join(","))
        }
    }
}

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::SymbolicError;
use crate::numerics::{bernoulli, BigReal, PrecisionContext};

/// An irreducible constant appearing in closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Log2,
    /// zeta(n), n >= 2
    Zeta(u32),
    /// A basic sum M(a,b) kept as a named constant.
    Reserved(u32, u32),
}

impl Atom {
    pub fn weight(&self) -> u32 {
        match *self {
            Atom::Log2 => 1,
            Atom::Zeta(n) => n,
            Atom::Reserved(a, b) => a + b,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Log2 => write!(f, "log2"),
            Atom::Zeta(n) => write!(f, "z{n}"),
            Atom::Reserved(a, b) => write!(f, "M({a},{b})"),
        }
    }
}

/// Product of atom powers in canonical form. The empty product is the unit.
///
/// Even zeta values are collapsed to a single factor, so a monomial holds at
/// most one zeta(2n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Atom, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self { factors: vec![(a, 1)] }
    }

    /// Canonicalizes a list of factors; returns the rational produced by
    /// merging even zeta values.
    pub fn from_factors(list: &[(Atom, u32)]) -> (Rational, Self) {
        let mut powers: BTreeMap<Atom, u32> = BTreeMap::new();
        for &(a, p) in list {
            if p > 0 {
                *powers.entry(a).or_insert(0) += p;
            }
        }
        let mut scale = Rational::from(1);
        let mut even_total = 0u32;
        let mut factors = Vec::new();
        for (a, p) in powers {
            match a {
                Atom::Zeta(n) if n % 2 == 0 => {
                    let r = even_ratio(n / 2);
                    scale *= r.pow(p as i32);
                    even_total += n / 2 * p;
                }
                _ => factors.push((a, p)),
            }
        }
        if even_total > 0 {
            scale /= even_ratio(even_total);
            factors.push((Atom::Zeta(2 * even_total), 1));
            factors.sort();
        }
        (scale, Self { factors })
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|(a, p)| a.weight() * p).sum()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, p)| p).sum()
    }

    fn reserved_count(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(a, _)| matches!(a, Atom::Reserved(..)))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> (Rational, Monomial) {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        Self::from_factors(&all)
    }

    fn sort_key(&self) -> (u32, u32, u32) {
        (self.weight(), self.reserved_count(), self.degree())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, p)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *p == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{p}")?;
            }
        }
        Ok(())
    }
}

/// zeta(2n) / pi^(2n) = |B_2n| 2^(2n-1) / (2n)!
fn even_ratio(n: u32) -> Rational {
    let b = bernoulli(2 * n).abs();
    let num = b * Integer::from(Integer::u_pow_u(2, 2 * n - 1));
    num / Integer::from(Integer::factorial(2 * n))
}

/// Supplies numeric values for atoms.
pub trait ConstantSource {
    fn value(&self, atom: &Atom, ctx: &PrecisionContext) -> Result<Float, SymbolicError>;
}

/// Rational linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedForm {
    terms: BTreeMap<Monomial, Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: impl Into<Rational>) -> Self {
        Self::term(q, Monomial::unit())
    }

    pub fn atom(a: Atom) -> Self {
        let (c, m) = Monomial::from_factors(&[(a, 1)]);
        Self::term(c, m)
    }

    pub fn zeta(n: u32) -> Self {
        Self::atom(Atom::Zeta(n))
    }

    pub fn term(q: impl Into<Rational>, m: Monomial) -> Self {
        let mut out = Self::zero();
        out.add_term(q.into(), m);
        out
    }

    /// Adds q * m; the monomial is assumed canonical.
    pub fn add_term(&mut self, q: Rational, m: Monomial) {
        if q == 0 {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += q;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, q: &Rational, other: &ClosedForm) {
        for (m, c) in &other.terms {
            self.add_term(Rational::from(q * c), m.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if the form has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub fn scaled(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(q, self);
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(a, _)| *a))
            .collect()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> Integer {
        self.terms
            .values()
            .fold(Integer::from(1), |l, q| l.lcm(q.denom()))
    }

    /// Renders as 1/L*(integer combination) when L > 1.
    pub fn render_over_lcm(&self) -> String {
        let l = self.common_denominator();
        if l == 1 {
            return self.to_string();
        }
        let inner = self.scaled(&Rational::from(l.clone()));
        format!("1/{l}*({inner})")
    }

    pub fn evaluate(&self, source: &dyn ConstantSource, ctx: &PrecisionContext) -> Result<BigReal, SymbolicError> {
        let bits = ctx.bits();
        let mut cache: HashMap<Atom, Float> = HashMap::new();
        let mut acc = Float::with_val(bits, 0);
        for (m, q) in &self.terms {
            let mut t = Float::with_val(bits, q);
            for (a, p) in &m.factors {
                if !cache.contains_key(a) {
                    cache.insert(*a, source.value(a, ctx)?);
                }
                let v = &cache[a];
                t *= Float::with_val(bits, v.pow(*p));
            }
            acc += t;
        }
        Ok(BigReal::new(acc, ctx.working_digits))
    }
}

impl From<Rational> for ClosedForm {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl Add<&ClosedForm> for &ClosedForm {
    type Output = ClosedForm;
    fn add(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        out.add_scaled(&Rational::from(1), rhs);
        out
    }
}

impl Sub<&ClosedForm> for &ClosedForm {
    type Output = ClosedForm;
    fn sub(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        out.add_scaled(&Rational::from(-1), rhs);
        out
    }
}

impl Mul<&ClosedForm> for &ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = ClosedForm::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                let (c, m) = ma.mul(mb);
                out.add_term(c * qa * qb, m);
            }
        }
        out
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        self.scaled(&Rational::from(-1))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = *q < 0;
            let abs = Rational::from(q.abs_ref());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct F64Source;
    impl ConstantSource for F64Source {
        fn value(&self, atom: &Atom, ctx: &PrecisionContext) -> Result<Float, SymbolicError> {
            let v = match atom {
                Atom::Zeta(n) => (1..200000).map(|k| (k as f64).powi(-(*n as i32))).sum::<f64>(),
                Atom::Log2 => std::f64::consts::LN_2,
                Atom::Reserved(..) => 1.0,
            };
            Ok(Float::with_val(ctx.bits(), v))
        }
    }

    #[test]
    fn even_zeta_products_collapse() {
        // zeta(2)^2 = 5/2 zeta(4)
        let z2 = ClosedForm::zeta(2);
        let sq = &z2 * &z2;
        assert_eq!(sq, ClosedForm::term(Rational::from((5, 2)), Monomial::atom(Atom::Zeta(4))));
        // zeta(2) zeta(4) = 7/4 zeta(6)
        let p = &z2 * &ClosedForm::zeta(4);
        assert_eq!(p.to_string(), "7/4*z6");
    }

    #[test]
    fn collapse_is_numerically_right() {
        let ctx = PrecisionContext::new(30).unwrap();
        let lhs = (&ClosedForm::zeta(4) * &ClosedForm::zeta(6)).evaluate(&F64Source, &ctx).unwrap();
        let pi = std::f64::consts::PI;
        let want = pi.powi(4) / 90.0 * pi.powi(6) / 945.0;
        assert!((lhs.to_f64() - want).abs() < 1e-9);
    }

    #[test]
    fn products_commute_and_render_in_order() {
        let a = &ClosedForm::zeta(3) * &ClosedForm::zeta(2);
        let b = &ClosedForm::zeta(2) * &ClosedForm::zeta(3);
        assert_eq!(a, b);
        let mut f = ClosedForm::rational(Rational::from(-3));
        f.add_scaled(&Rational::from(2), &ClosedForm::zeta(3));
        f.add_scaled(&Rational::from((11, 4)), &ClosedForm::zeta(4));
        assert_eq!(f.to_string(), "-3 + 2*z3 + 11/4*z4");
    }

    #[test]
    fn cancellation_removes_terms() {
        let z = ClosedForm::zeta(5);
        assert!((&z - &z).is_zero());
        assert_eq!((&z - &z).to_string(), "0");
    }

    #[test]
    fn lcm_rendering() {
        let mut f = ClosedForm::zeta(8).scaled(&Rational::from((595, 96)));
        f.add_scaled(&Rational::from((-264, 96)), &ClosedForm::atom(Atom::Reserved(2, 6)));
        assert_eq!(f.render_over_lcm(), "1/96*(595*z8 - 264*M(2,6))");
        assert_eq!(f.common_denominator(), 96);
    }

    #[test]
    fn monomial_order_by_weight() {
        let z = |n| Monomial::atom(Atom::Zeta(n));
        let (_, z2z3) = z(2).mul(&z(3));
        assert!(Monomial::unit() < z(2));
        assert!(z(5) < z2z3);
        assert!(z2z3 < z(6));
        assert!(Monomial::atom(Atom::Reserved(2, 6)) > z(8));
    }
}

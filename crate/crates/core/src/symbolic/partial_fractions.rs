use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::numerics::binomial;

/// Sum of c / (k+w)^j keyed by (w, j).
pub type PartialFractions = BTreeMap<(u32, u32), Rational>;

/// Decomposes 1 / prod (k+w)^e into simple terms.
///
/// Factors with equal shifts are merged and zero exponents dropped.
pub fn partial_fractions(denominator: &[(u32, u32)]) -> PartialFractions {
    let mut merged: BTreeMap<u32, u32> = BTreeMap::new();
    for &(w, e) in denominator {
        if e > 0 {
            *merged.entry(w).or_insert(0) += e;
        }
    }
    let poles: Vec<(u32, u32)> = merged.into_iter().collect();
    let mut out = PartialFractions::new();
    for &(w, e) in &poles {
        // Taylor series in y = k + w of the other factors, to order e-1.
        let mut series = vec![Rational::new(); e as usize];
        series[0] = Rational::from(1);
        for &(v, ev) in &poles {
            if v == w {
                continue;
            }
            let d = Integer::from(v as i64 - w as i64);
            let factor: Vec<Rational> = (0..e)
                .map(|r| {
                    let c = binomial(ev + r - 1, r);
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    Rational::from((c * sign, d.clone().pow(ev + r)))
                })
                .collect();
            series = truncated_product(&series, &factor);
        }
        for (r, c) in series.into_iter().enumerate() {
            if c != 0 {
                out.insert((w, e - r as u32), c);
            }
        }
    }
    out
}

fn truncated_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::new(); n];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// Product of two partial-fraction expansions, re-expanded.
pub fn multiply(a: &PartialFractions, b: &PartialFractions) -> PartialFractions {
    let mut out = PartialFractions::new();
    for (&(w1, j1), c1) in a {
        for (&(w2, j2), c2) in b {
            let c = Rational::from(c1 * c2);
            if w1 == w2 {
                accumulate(&mut out, (w1, j1 + j2), c);
            } else {
                for (key, d) in partial_fractions(&[(w1, j1), (w2, j2)]) {
                    accumulate(&mut out, key, Rational::from(&c * &d));
                }
            }
        }
    }
    out
}

pub(crate) fn accumulate(map: &mut PartialFractions, key: (u32, u32), c: Rational) {
    if c == 0 {
        return;
    }
    let slot = map.entry(key).or_default();
    *slot += c;
    if *slot == 0 {
        map.remove(&key);
    }
}

/// Exact value of the expansion at integer k.
pub fn evaluate_at(pf: &PartialFractions, k: i64) -> Rational {
    let mut s = Rational::new();
    for (&(w, j), c) in pf {
        let base = Integer::from(k + w as i64).pow(j);
        s += Rational::from(c / base);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_examples() {
        let pf = partial_fractions(&[(1, 1), (2, 2)]);
        assert_eq!(pf[&(1, 1)], 1);
        assert_eq!(pf[&(2, 1)], -1);
        assert_eq!(pf[&(2, 2)], -1);
        assert_eq!(pf.len(), 3);

        let pf = partial_fractions(&[(0, 1), (1, 1)]);
        assert_eq!(pf[&(0, 1)], 1);
        assert_eq!(pf[&(1, 1)], -1);

        let pf = partial_fractions(&[(0, 2), (1, 2)]);
        assert_eq!(pf[&(0, 1)], -2);
        assert_eq!(pf[&(1, 1)], 2);
        assert_eq!(pf[&(0, 2)], 1);
        assert_eq!(pf[&(1, 2)], 1);
    }

    #[test]
    fn single_factor_is_identity() {
        let pf = partial_fractions(&[(3, 4)]);
        assert_eq!(pf.len(), 1);
        assert_eq!(pf[&(3, 4)], 1);
    }

    fn direct(den: &[(u32, u32)], k: i64) -> Rational {
        let mut d = Integer::from(1);
        for &(w, e) in den {
            d *= Integer::from(k + w as i64).pow(e);
        }
        Rational::from((1, d))
    }

    #[test]
    fn recombination_is_exact() {
        // Agreement at more points than the denominator degree makes the
        // rational functions identical.
        let cases: &[&[(u32, u32)]] = &[
            &[(0, 3), (1, 2), (2, 1)],
            &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)],
            &[(1, 5), (4, 3)],
            &[(0, 2), (2, 2), (5, 4)],
        ];
        for den in cases {
            let pf = partial_fractions(den);
            let deg: u32 = den.iter().map(|x| x.1).sum();
            for k in 1..=(deg as i64 + 2) {
                assert_eq!(evaluate_at(&pf, k), direct(den, k), "{den:?} at {k}");
            }
        }
    }

    #[test]
    fn product_matches_direct() {
        let a = partial_fractions(&[(0, 1), (2, 2)]);
        let b = partial_fractions(&[(1, 1), (2, 1)]);
        let p = multiply(&a, &b);
        for k in 1..10 {
            assert_eq!(evaluate_at(&p, k), direct(&[(0, 1), (1, 1), (2, 3)], k));
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::closed_form::ClosedForm;
use super::partial_fractions::{multiply, partial_fractions, PartialFractions};
use super::SymbolicError;
use crate::harmonic::{harmonic_exact, harmonic_exact_order};
use crate::numerics::binomial;
use crate::sums::MixedSumSpec;

/// Header line of every derivation trace. Bump when the line format changes.
pub const TRACE_VERSION: &str = "reduce-trace v1";

/// Highest order the reducer accepts.
pub const MAX_REDUCE_ORDER: u32 = 12;

const STEP_CAP: usize = 200_000;

/// Formal rational combination of sums plus a constant part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SumExpr {
    sums: BTreeMap<MixedSumSpec, Rational>,
    constant: ClosedForm,
}

impl SumExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_spec(spec: MixedSumSpec) -> Self {
        let mut e = Self::new();
        e.add_sum(spec, Rational::from(1));
        e
    }

    pub fn sums(&self) -> impl Iterator<Item = (&MixedSumSpec, &Rational)> {
        self.sums.iter()
    }

    pub fn constant(&self) -> &ClosedForm {
        &self.constant
    }

    pub fn add_sum(&mut self, spec: MixedSumSpec, q: Rational) {
        if q == 0 {
            return;
        }
        let slot = self.sums.entry(spec.clone()).or_default();
        *slot += q;
        if *slot == 0 {
            self.sums.remove(&spec);
        }
    }

    pub fn add_constant(&mut self, q: &Rational, c: &ClosedForm) {
        self.constant.add_scaled(q, c);
    }

    /// True when every sum is a basic M(a,b).
    pub fn is_basic_only(&self) -> bool {
        self.sums.keys().all(|s| s.as_basic().is_some())
    }

    /// Largest order among the sums and the constant weights.
    pub fn max_order(&self) -> u32 {
        let s = self.sums.keys().filter_map(|s| s.order().ok()).max().unwrap_or(0);
        s.max(self.constant.max_weight())
    }
}

impl fmt::Display for SumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        // highest power of H first
        for (s, q) in self.sums.iter().rev() {
            let abs = Rational::from(q.abs_ref());
            match (first, *q < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if abs == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{abs}*{s}")?;
            }
            first = false;
        }
        if self.constant.is_zero() {
            if first {
                write!(f, "0")?;
            }
            return Ok(());
        }
        let c = self.constant.to_string();
        if first {
            write!(f, "{c}")
        } else if let Some(rest) = c.strip_prefix('-') {
            // the first constant term carries its own sign
            write!(f, " - {rest}")
        } else {
            write!(f, " + {c}")
        }
    }
}

/// Result of a traced reduction.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub expr: SumExpr,
    pub trace: Vec<String>,
}

/// Working state: sum_k H_k^b/(k+w)^j keyed by (b, w, j).
#[derive(Debug, Clone, Default)]
struct Pieces {
    terms: BTreeMap<(u32, u32, u32), Rational>,
    constant: ClosedForm,
}

impl Pieces {
    /// Adds q * sum H_k^b/(k+w)^j; b = 0 pieces with j >= 2 become zeta values.
    fn add(&mut self, b: u32, w: u32, j: u32, q: Rational) {
        if q == 0 {
            return;
        }
        if b == 0 && j >= 2 {
            // sum_{k>=1} 1/(k+w)^j = zeta(j) - H_w^(j)
            self.constant.add_scaled(&q, &ClosedForm::zeta(j));
            let head = harmonic_exact_order(w as u64, j);
            self.constant.add_term(-(q * head), Default::default());
            return;
        }
        let key = (b, w, j);
        let slot = self.terms.entry(key).or_default();
        *slot += q;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    fn add_scaled(&mut self, q: &Rational, other: &Pieces) {
        for (&(b, w, j), c) in &other.terms {
            self.add(b, w, j, Rational::from(q * c));
        }
        self.constant.add_scaled(q, &other.constant);
    }

    fn add_rational(&mut self, q: Rational) {
        self.constant.add_term(q, Default::default());
    }

    fn max_order(&self) -> u32 {
        let t = self.terms.keys().map(|&(b, _, j)| b + j).max().unwrap_or(0);
        t.max(self.constant.max_weight())
    }

    fn to_expr(&self) -> SumExpr {
        let mut e = SumExpr::new();
        for (&(b, w, j), q) in &self.terms {
            e.add_sum(MixedSumSpec::single(b, w, j), q.clone());
        }
        e.constant = self.constant.clone();
        e
    }
}

/// (1/(k+1) + ... + 1/(k+w))^p / (k+w)^j as partial fractions.
fn delta_power_over(w: u32, p: u32, j: u32) -> PartialFractions {
    let mut acc = PartialFractions::new();
    acc.insert((w, j), Rational::from(1));
    let delta: PartialFractions = (1..=w).map(|i| ((i, 1), Rational::from(1))).collect();
    for _ in 0..p {
        acc = multiply(&acc, &delta);
    }
    acc
}

/// sum_{n<=w} H_n^b / n^j
fn head_sum(b: u32, w: u32, j: u32) -> Rational {
    let mut s = Rational::new();
    for n in 1..=w as u64 {
        let h = harmonic_exact(n);
        s += Rational::from((&h).pow(b)) / Integer::from(n).pow(j);
    }
    s
}

/// sum_{c<b} C(b,c) sum_k H_k^c Delta_w(k)^(b-c) / (k+w)^j, added with factor q.
fn add_binomial_tail(out: &mut Pieces, b: u32, w: u32, j: u32, q: &Rational) {
    for c in 0..b {
        let coef = Rational::from(q * binomial(b, c));
        for ((i, jj), d) in delta_power_over(w, b - c, j) {
            out.add(c, i, jj, Rational::from(&coef * &d));
        }
    }
}

fn shift_pieces(m: u32, w: u32, j: u32) -> Pieces {
    let mut out = Pieces::default();
    if w == 0 {
        out.add(m, 0, j, Rational::from(1));
        return out;
    }
    out.add(m, 0, j, Rational::from(1));
    out.add_rational(-head_sum(m, w, j));
    add_binomial_tail(&mut out, m, w, j, &Rational::from(-1));
    out
}

/// sum_k H_k^b (1/(k+u) - 1/k)
fn telescope_pieces(b: u32, u: u32) -> Pieces {
    let mut out = Pieces::default();
    out.add_rational(-head_sum(b, u, 1));
    add_binomial_tail(&mut out, b, u, 1, &Rational::from(-1));
    out
}

/// Rewrites sum_k H_k^m/(k+w)^j (j >= 2) by moving the shift into H.
///
/// The result holds M(m,j) and sums with fewer powers of H.
pub fn shift_reduce(m: u32, w: u32, j: u32) -> Result<SumExpr, SymbolicError> {
    if j < 2 {
        return Err(SymbolicError::Divergent(format!("{}", MixedSumSpec::single(m, w, j))));
    }
    Ok(shift_pieces(m, w, j).to_expr())
}

/// Reduces an integer-shift sum to basic sums and constants.
pub fn reduce(spec: &MixedSumSpec) -> Result<SumExpr, SymbolicError> {
    Ok(run(spec, false)?.expr)
}

/// Like `reduce`, also returning the rewrite trace.
pub fn reduce_traced(spec: &MixedSumSpec) -> Result<Reduction, SymbolicError> {
    run(spec, true)
}

fn run(spec: &MixedSumSpec, tracing: bool) -> Result<Reduction, SymbolicError> {
    let shifts = spec.shifts().ok_or(SymbolicError::NotIntegerShift(spec.to_string()))?;
    let order = spec.order().map_err(|e| SymbolicError::Divergent(e.to_string()))?;
    if order > MAX_REDUCE_ORDER {
        return Err(SymbolicError::OrderTooHigh { order, max: MAX_REDUCE_ORDER });
    }
    if spec.degree() < 2 {
        return Err(SymbolicError::Divergent(spec.to_string()));
    }
    let mut trace = Vec::new();
    if tracing {
        trace.push(TRACE_VERSION.to_string());
    }
    let m = spec.m();
    let mut state = Pieces::default();
    for ((w, j), c) in partial_fractions(&shifts) {
        state.add(m, w, j, c);
    }
    if tracing && (shifts.len() > 1 || m == 0) {
        trace.push(format!("[pf] {spec} = {}", state.to_expr()));
    }
    let check = |p: &Pieces, step: &str| -> Result<(), SymbolicError> {
        let after = p.max_order();
        if after > order {
            return Err(SymbolicError::OrderIncreased { step: step.to_string(), before: order, after });
        }
        Ok(())
    };
    check(&state, "pf")?;
    let mut steps = 0usize;
    for b in (0..=m).rev() {
        // shifted pieces with j >= 2, largest shift first
        let mut shifted: Vec<(u32, u32, Rational)> = state
            .terms
            .iter()
            .filter(|(&(bb, w, j), _)| bb == b && w > 0 && j >= 2)
            .map(|(&(_, w, j), q)| (w, j, q.clone()))
            .collect();
        shifted.sort_by_key(|x| std::cmp::Reverse((x.0, x.1)));
        for (w, j, q) in shifted {
            steps += 1;
            if steps > STEP_CAP {
                return Err(SymbolicError::IterationCap(state.to_expr().to_string()));
            }
            state.terms.remove(&(b, w, j));
            let piece = shift_pieces(b, w, j);
            if tracing {
                trace.push(format!("[shift] {} = {}", MixedSumSpec::single(b, w, j), piece.to_expr()));
            }
            state.add_scaled(&q, &piece);
            check(&state, "shift")?;
        }
        // telescoping group sum_u c_u H_k^b/(k+u)
        let group: Vec<(u32, Rational)> = state
            .terms
            .iter()
            .filter(|(&(bb, _, j), _)| bb == b && j == 1)
            .map(|(&(_, w, _), q)| (w, q.clone()))
            .collect();
        if group.is_empty() {
            continue;
        }
        let total: Rational = group.iter().map(|(_, q)| q.clone()).sum();
        let mut before = Pieces::default();
        for (w, q) in &group {
            before.add(b, *w, 1, q.clone());
            state.terms.remove(&(b, *w, 1));
        }
        if total != 0 {
            return Err(SymbolicError::Divergent(before.to_expr().to_string()));
        }
        let mut result = Pieces::default();
        for (u, q) in group {
            if u > 0 {
                result.add_scaled(&q, &telescope_pieces(b, u));
            }
        }
        if tracing {
            trace.push(format!("[telescope] {} = {}", before.to_expr(), result.to_expr()));
        }
        state.add_scaled(&Rational::from(1), &result);
        check(&state, "telescope")?;
    }
    let mut expr = SumExpr::new();
    for (&(b, w, j), q) in &state.terms {
        debug_assert!(w == 0 && j >= 2 && b >= 1);
        expr.add_sum(MixedSumSpec::single(b, w, j), q.clone());
    }
    expr.constant = state.constant;
    if tracing {
        trace.push(format!("= {expr}"));
    }
    Ok(Reduction { expr, trace })
}

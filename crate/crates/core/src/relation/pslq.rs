use rug::float::Round;
use rug::{Float, Integer};

use super::{RelationError, RelationProblem};
use crate::numerics::{digits_to_bits, log10_abs, BigReal};

/// Which PSLQ kernel to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PslqMode {
    /// Several disjoint exchanges per iteration.
    Multipair,
    /// One exchange per iteration, the original formulation.
    Classic,
}

/// Tuning knobs. `threshold_digits` sets the detection level 10^-T for the
/// normalized y vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PslqOptions {
    pub mode: PslqMode,
    pub threshold_digits: u32,
    pub max_iterations: usize,
    /// Weight base for choosing exchanges.
    pub gamma: f64,
    /// Fraction of n used as the pair count in multipair mode.
    pub pair_fraction: f64,
    /// Overrides the automatic limit on log10 max|B|.
    pub max_coefficient_digits: Option<f64>,
}

impl PslqOptions {
    pub fn new(mode: PslqMode, threshold_digits: u32, max_iterations: usize) -> Self {
        let gamma = match mode {
            PslqMode::Multipair => (4.0f64 / 3.0).sqrt(),
            // the original analysis needs gamma strictly above sqrt(4/3)
            PslqMode::Classic => 1.2,
        };
        Self { mode, threshold_digits, max_iterations, gamma, pair_fraction: 0.4, max_coefficient_digits: None }
    }
}

/// A detected integer relation sum a_i x_i = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub coefficients: Vec<Integer>,
    pub detected_at_iteration: usize,
    /// max|y| / min|y| at detection; infinite when min|y| is exactly zero.
    pub dynamic_range: BigReal,
    pub norm: f64,
    /// log10 min|y| after every iteration.
    pub trace: Vec<f64>,
}

impl Relation {
    /// Confidence below 10^20 is reported as weak.
    pub const WEAK_DYNAMIC_RANGE_LOG10: f64 = 20.0;

    pub fn dynamic_range_log10(&self) -> f64 {
        log10_or_inf(self.dynamic_range.value())
    }

    pub fn is_weak(&self) -> bool {
        self.dynamic_range_log10() < Self::WEAK_DYNAMIC_RANGE_LOG10
    }
}

/// A detection whose y vector spans less than this many decades is taken
/// as a numerical artifact rather than a relation.
pub const ARTIFACT_DYNAMIC_RANGE_LOG10: f64 = 10.0;

fn log10_or_inf(v: &Float) -> f64 {
    if v.is_infinite() {
        f64::INFINITY
    } else {
        log10_abs(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// B grew past the noise floor, or y reached the threshold without the
    /// sharp drop of a true relation.
    PrecisionExhausted,
    IterationLimit,
}

/// No relation exists with Euclidean norm below `norm_bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionBound {
    pub norm_bound: BigReal,
    pub iterations: usize,
    pub reason: StopReason,
    pub trace: Vec<f64>,
}

impl ExclusionBound {
    pub fn log10(&self) -> f64 {
        log10_abs(self.norm_bound.value())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PslqOutcome {
    Relation(Relation),
    Exclusion(ExclusionBound),
}

impl PslqOutcome {
    pub fn relation(&self) -> Option<&Relation> {
        match self {
            PslqOutcome::Relation(r) => Some(r),
            PslqOutcome::Exclusion(_) => None,
        }
    }
}

/// max|y_i| / min|y_i|.
pub fn dynamic_range(y: &[Float]) -> Result<BigReal, RelationError> {
    let prec = y.iter().map(|v| v.prec()).max().ok_or(RelationError::TooFewEntries(0))?;
    let mut hi = Float::with_val(prec, 0);
    let mut lo = Float::with_val(prec, f64::INFINITY);
    for v in y {
        let a = Float::with_val(prec, v.abs_ref());
        if a > hi {
            hi = a.clone();
        }
        if a < lo {
            lo = a;
        }
    }
    if hi.is_zero() {
        return Err(RelationError::ZeroVector);
    }
    let digits = (prec as f64 / std::f64::consts::LOG2_10) as u32;
    Ok(BigReal::new(hi / lo, digits))
}

/// Multipair PSLQ with the default parameters.
pub fn pslq_multipair(problem: &RelationProblem, threshold_digits: u32, max_iterations: usize) -> Result<PslqOutcome, RelationError> {
    pslq(problem, &PslqOptions::new(PslqMode::Multipair, threshold_digits, max_iterations))
}

/// Classic one-pair PSLQ, kept as a cross-check.
pub fn pslq_classic(problem: &RelationProblem, threshold_digits: u32, max_iterations: usize) -> Result<PslqOutcome, RelationError> {
    pslq(problem, &PslqOptions::new(PslqMode::Classic, threshold_digits, max_iterations))
}

struct State {
    n: usize,
    bits: u32,
    y: Vec<Float>,
    // n x (n-1), lower trapezoidal
    h: Vec<Vec<Float>>,
    b: Vec<Vec<Integer>>,
}

pub fn pslq(problem: &RelationProblem, opts: &PslqOptions) -> Result<PslqOutcome, RelationError> {
    let precision = problem.precision();
    if opts.threshold_digits == 0 || opts.threshold_digits >= precision {
        return Err(RelationError::Threshold { threshold: opts.threshold_digits, precision });
    }
    let bits = digits_to_bits(precision + 10);
    let x: Vec<Float> = problem.entries().iter().map(|(_, v)| Float::with_val(bits, v.value())).collect();
    let mut st = State::new(&x, bits);
    let threshold = -(opts.threshold_digits as f64);
    // the noise floor |B| 10^-P of y must stay under 10^-T
    let b_cap = opts.max_coefficient_digits.unwrap_or((precision - opts.threshold_digits) as f64);
    let pairs = match opts.mode {
        PslqMode::Multipair => ((opts.pair_fraction * st.n as f64) as usize).max(1),
        PslqMode::Classic => 1,
    };
    let log_gamma = opts.gamma.log10();
    let mut trace = Vec::new();
    let mut best_bound = Float::with_val(bits, 0);

    for iter in 0..=opts.max_iterations {
        if iter > 0 {
            st.exchange(&st.select(pairs, log_gamma));
        }
        st.reduce()?;

        if let Some(bound) = st.norm_bound() {
            if bound > best_bound {
                best_bound = bound;
            }
        }
        let (jmin, lmin) = st.min_y();
        trace.push(lmin);
        if lmin < threshold {
            let dr = dynamic_range(&st.y)?;
            if log10_or_inf(dr.value()) < ARTIFACT_DYNAMIC_RANGE_LOG10 {
                // y sank to the noise floor as a whole: no drop, no relation
                return Ok(exclusion(best_bound, iter, StopReason::PrecisionExhausted, trace, precision));
            }
            let coefficients = normalize((0..st.n).map(|k| st.b[k][jmin].clone()).collect());
            if !residual_ok(&x, &coefficients, opts.threshold_digits, bits) {
                return Err(RelationError::PrecisionExhausted { iteration: iter });
            }
            let norm = coefficients.iter().map(|a| a.to_f64().powi(2)).sum::<f64>().sqrt();
            return Ok(PslqOutcome::Relation(Relation {
                coefficients,
                detected_at_iteration: iter,
                dynamic_range: dr,
                norm,
                trace,
            }));
        }
        if st.max_b_log10() > b_cap {
            return Ok(exclusion(best_bound, iter, StopReason::PrecisionExhausted, trace, precision));
        }
    }
    Ok(exclusion(best_bound, opts.max_iterations, StopReason::IterationLimit, trace, precision))
}

fn exclusion(bound: Float, iterations: usize, reason: StopReason, trace: Vec<f64>, digits: u32) -> PslqOutcome {
    PslqOutcome::Exclusion(ExclusionBound { norm_bound: BigReal::new(bound, digits), iterations, reason, trace })
}

// Sign so the first nonzero entry is positive, content removed.
fn normalize(mut a: Vec<Integer>) -> Vec<Integer> {
    let g = a.iter().fold(Integer::new(), |g, v| g.gcd(v));
    if g > 1 {
        for v in a.iter_mut() {
            *v /= &g;
        }
    }
    if a.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
        for v in a.iter_mut() {
            *v = -v.clone();
        }
    }
    a
}

// Direct |sum a_i x_i| / |x| against the threshold, allowing two digits of
// drift between the running y vector and a fresh evaluation.
fn residual_ok(x: &[Float], a: &[Integer], threshold_digits: u32, bits: u32) -> bool {
    let mut sum = Float::with_val(bits, 0);
    let mut norm = Float::with_val(bits, 0);
    for (xi, ai) in x.iter().zip(a) {
        sum += Float::with_val(bits, xi * ai);
        norm += Float::with_val(bits, xi * xi);
    }
    if sum.is_zero() {
        return true;
    }
    let rel = sum.abs() / norm.sqrt();
    log10_abs(&rel) < -(threshold_digits as f64) + 2.0
}

impl State {
    fn new(x: &[Float], bits: u32) -> Self {
        let n = x.len();
        // s_j = sqrt(sum_{k>=j} x_k^2)
        let mut s = vec![Float::with_val(bits, 0); n];
        let mut acc = Float::with_val(bits, 0);
        for j in (0..n).rev() {
            acc += Float::with_val(bits, &x[j] * &x[j]);
            s[j] = Float::with_val(bits, acc.sqrt_ref());
        }
        let t = Float::with_val(bits, 1) / &s[0];
        let y: Vec<Float> = x.iter().map(|v| Float::with_val(bits, v * &t)).collect();
        for v in s.iter_mut() {
            *v *= &t;
        }
        let mut h = vec![vec![Float::with_val(bits, 0); n - 1]; n];
        for j in 0..n - 1 {
            h[j][j] = Float::with_val(bits, &s[j + 1] / &s[j]);
            let den = Float::with_val(bits, &s[j] * &s[j + 1]);
            for i in j + 1..n {
                let num = Float::with_val(bits, &y[i] * &y[j]);
                h[i][j] = -(num / &den);
            }
        }
        let b = (0..n)
            .map(|i| (0..n).map(|j| Integer::from(u32::from(i == j))).collect())
            .collect();
        Self { n, bits, y, h, b }
    }

    // Full Hermite reduction of H, carried into y and B.
    fn reduce(&mut self) -> Result<(), RelationError> {
        let n = self.n;
        for i in 1..n {
            for j in (0..i.min(n - 1)).rev() {
                if self.h[j][j].is_zero() {
                    // only happens once y already holds an exact zero
                    continue;
                }
                let q = Float::with_val(self.bits, &self.h[i][j] / &self.h[j][j]);
                let (t, _) = q.to_integer_round(Round::Nearest).ok_or(RelationError::Degenerate)?;
                if t == 0 {
                    continue;
                }
                let tf = Float::with_val(self.bits, &t);
                let yi = Float::with_val(self.bits, &self.y[i] * &tf);
                self.y[j] += yi;
                for k in 0..=j {
                    let d = Float::with_val(self.bits, &self.h[j][k] * &tf);
                    self.h[i][k] -= d;
                }
                for row in self.b.iter_mut() {
                    let d = Integer::from(&row[i] * &t);
                    row[j] += d;
                }
            }
        }
        Ok(())
    }

    // Disjoint pairs (i, i+1) by decreasing gamma^(i+1) |H_ii|.
    fn select(&self, pairs: usize, log_gamma: f64) -> Vec<usize> {
        let mut w: Vec<(f64, usize)> = (0..self.n - 1)
            .map(|i| (log_gamma * (i + 1) as f64 + log10_abs(&self.h[i][i]), i))
            .collect();
        w.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut used = vec![false; self.n];
        let mut out = Vec::new();
        for (_, i) in w {
            if out.len() == pairs {
                break;
            }
            if used[i] || used[i + 1] {
                continue;
            }
            used[i] = true;
            used[i + 1] = true;
            out.push(i);
        }
        out
    }

    fn exchange(&mut self, chosen: &[usize]) {
        let n = self.n;
        for &i in chosen {
            self.y.swap(i, i + 1);
            self.h.swap(i, i + 1);
            for row in self.b.iter_mut() {
                row.swap(i, i + 1);
            }
            if i + 2 < n {
                // Givens rotation clears the new entry H[i][i+1]
                let a = &self.h[i][i];
                let c = &self.h[i][i + 1];
                let t0 = Float::with_val(self.bits, Float::with_val(self.bits, a * a) + Float::with_val(self.bits, c * c)).sqrt();
                let t1 = Float::with_val(self.bits, a / &t0);
                let t2 = Float::with_val(self.bits, c / &t0);
                for k in i..n {
                    let u = self.h[k][i].clone();
                    let v = self.h[k][i + 1].clone();
                    self.h[k][i] = Float::with_val(self.bits, &t1 * &u) + Float::with_val(self.bits, &t2 * &v);
                    self.h[k][i + 1] = Float::with_val(self.bits, &t1 * &v) - Float::with_val(self.bits, &t2 * &u);
                }
            }
        }
    }

    // 1/max|H_jj|
    fn norm_bound(&self) -> Option<Float> {
        let mut m = Float::with_val(self.bits, 0);
        for j in 0..self.n - 1 {
            let a = Float::with_val(self.bits, self.h[j][j].abs_ref());
            if a > m {
                m = a;
            }
        }
        (!m.is_zero()).then(|| Float::with_val(self.bits, 1) / m)
    }

    fn min_y(&self) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (j, v) in self.y.iter().enumerate() {
            let l = if v.is_zero() { f64::NEG_INFINITY } else { log10_abs(v) };
            if l < best.1 {
                best = (j, l);
            }
        }
        best
    }

    fn max_b_log10(&self) -> f64 {
        let mut m = 0u32;
        for row in &self.b {
            for v in row {
                m = m.max(v.significant_bits());
            }
        }
        m as f64 * std::f64::consts::LOG10_2
    }
}

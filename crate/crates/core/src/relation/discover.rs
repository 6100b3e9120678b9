use rayon::prelude::*;
use rug::{Integer, Rational};

use super::{basis_for_order, pslq, BasisSpec, PslqMode, PslqOptions, PslqOutcome, Relation, RelationError, RelationProblem};
use crate::formula_db::StandardConstants;
use crate::numerics::{BigReal, PrecisionContext};
use crate::sums::{eval_auto, EvalReport, MixedSumSpec};
use crate::symbolic::{ClosedForm, ConstantSource};

/// A closed form found numerically, with the evidence behind it.
#[derive(Debug, Clone)]
pub struct Discovery {
    pub spec: MixedSumSpec,
    pub closed_form: ClosedForm,
    pub relation: Relation,
    pub basis: BasisSpec,
    pub evaluation: EvalReport,
}

impl Discovery {
    /// (L, -L c_1, ..., -L c_n): the relation for [sum, basis...] scaled so
    /// the sum's coefficient is the common denominator L.
    pub fn relation_vector(&self) -> Vec<Integer> {
        let l = self.closed_form.common_denominator();
        let mut out = vec![l.clone()];
        for m in &self.basis.elements {
            let c = Rational::from(&self.closed_form.coefficient(m) * &l);
            out.push(-c.into_numer_denom().0);
        }
        out
    }
}

const MAX_ITERATIONS: usize = 100_000;

/// Digits below which |y| counts as a detection: the working digits less the
/// guard, but never under half of them.
pub fn detection_threshold(ctx: &PrecisionContext) -> u32 {
    let digits = ctx.working_digits;
    digits.saturating_sub(ctx.guard_digits).max(digits / 2)
}

/// PSLQ on the order-r basis alone. An exclusion bound is the expected
/// outcome; a relation would mean the basis is dependent.
pub fn probe_basis(
    order: u32,
    ctx: &PrecisionContext,
    constants: &dyn ConstantSource,
    mode: PslqMode,
) -> Result<(BasisSpec, PslqOutcome), RelationError> {
    let basis = basis_for_order(order)?;
    let digits = ctx.working_digits;
    let entries = basis.labels().into_iter().zip(basis.values(constants, ctx)?).map(|(l, v)| (l, BigReal::new(v, digits))).collect();
    let problem = RelationProblem::new(entries)?;
    let outcome = pslq(&problem, &PslqOptions::new(mode, detection_threshold(ctx), MAX_ITERATIONS))?;
    Ok((basis, outcome))
}

/// Evaluates the sum, runs multipair PSLQ against the basis for its order and
/// solves the relation for the sum.
pub fn discover(spec: &MixedSumSpec, ctx: &PrecisionContext) -> Result<Discovery, RelationError> {
    discover_with(spec, ctx, &StandardConstants::default(), PslqMode::Multipair)
}

pub fn discover_with(
    spec: &MixedSumSpec,
    ctx: &PrecisionContext,
    constants: &dyn ConstantSource,
    mode: PslqMode,
) -> Result<Discovery, RelationError> {
    let order = spec.order()?;
    if order > 12 {
        return Err(RelationError::OrderOutOfRange(order));
    }
    let basis = basis_for_order(order.max(3))?;
    let evaluation = eval_auto(spec, ctx)?;
    let digits = ctx.working_digits;
    let mut entries = vec![(spec.to_string(), BigReal::new(evaluation.value.value().clone(), digits))];
    for (label, v) in basis.labels().into_iter().zip(basis.values(constants, ctx)?) {
        entries.push((label, BigReal::new(v, digits)));
    }
    let problem = RelationProblem::new(entries)?;
    let opts = PslqOptions::new(mode, detection_threshold(ctx), MAX_ITERATIONS);
    let relation = match pslq(&problem, &opts)? {
        PslqOutcome::Relation(r) => r,
        PslqOutcome::Exclusion(b) => return Err(RelationError::NoRelation { bound_log10: b.log10() }),
    };
    let a0 = &relation.coefficients[0];
    if *a0 == 0 {
        return Err(RelationError::SumNotInvolved);
    }
    // a0 s + sum a_i c_i = 0  =>  s = sum (-a_i/a0) c_i
    let mut closed_form = ClosedForm::zero();
    for (m, a) in basis.elements.iter().zip(&relation.coefficients[1..]) {
        closed_form.add_term(-Rational::from((a.clone(), a0.clone())), m.clone());
    }
    Ok(Discovery { spec: spec.clone(), closed_form, relation, basis, evaluation })
}

/// Independent discoveries on a pool of `workers` threads, in input order.
pub fn discover_all(
    specs: &[MixedSumSpec],
    ctx: &PrecisionContext,
    workers: usize,
) -> Vec<Result<Discovery, RelationError>> {
    let run = || specs.par_iter().map(|s| discover(s, ctx)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => specs.iter().map(|s| discover(s, ctx)).collect(),
    }
}

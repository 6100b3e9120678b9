//! Integer relation detection and closed-form discovery.
//!
//! PSLQ looks for integers a with sum a_i x_i = 0 to the working precision.
//! When it stops without one, 1/max|H_jj| bounds the Euclidean norm of any
//! relation that could still exist.

mod basis;
mod discover;
mod pslq;

use thiserror::Error;

use crate::numerics::BigReal;
use crate::sums::{EvalError, SpecError};
use crate::symbolic::SymbolicError;

pub use basis::{basis_for_order, BasisSpec, MAX_BASIS_ORDER, MIN_BASIS_ORDER};
pub use discover::{detection_threshold, discover, discover_all, discover_with, probe_basis, Discovery};
pub use pslq::{
    dynamic_range, pslq, ARTIFACT_DYNAMIC_RANGE_LOG10, pslq_classic, pslq_multipair, ExclusionBound, PslqMode, PslqOptions, PslqOutcome, Relation,
    StopReason,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelationError {
    #[error("need at least two entries, got {0}")]
    TooFewEntries(usize),
    #[error("entry {0} is zero")]
    ZeroEntry(String),
    #[error("entries carry different precisions ({0} vs {1} digits)")]
    MixedPrecision(u32, u32),
    #[error("vector is zero")]
    ZeroVector,
    #[error("detection threshold 1e-{threshold} does not fit {precision}-digit data")]
    Threshold { threshold: u32, precision: u32 },
    #[error("order {0} outside 3..=12")]
    OrderOutOfRange(u32),
    #[error("numerical artifact at iteration {iteration}: y fell below the threshold but the relation does not hold")]
    PrecisionExhausted { iteration: usize },
    #[error("reduction step hit a zero diagonal")]
    Degenerate,
    #[error("the relation found does not involve the sum (basis constants are dependent)")]
    SumNotInvolved,
    #[error("no relation found at this precision; norm bound 1e{bound_log10:.2}")]
    NoRelation { bound_log10: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Labelled high-precision entries for PSLQ.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationProblem {
    entries: Vec<(String, BigReal)>,
}

impl RelationProblem {
    pub fn new(entries: Vec<(String, BigReal)>) -> Result<Self, RelationError> {
        if entries.len() < 2 {
            return Err(RelationError::TooFewEntries(entries.len()));
        }
        let d = entries[0].1.digits();
        for (label, v) in &entries {
            if v.value().is_zero() {
                return Err(RelationError::ZeroEntry(label.clone()));
            }
            if v.digits() != d {
                return Err(RelationError::MixedPrecision(d, v.digits()));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(String, BigReal)] {
        &self.entries
    }

    pub fn precision(&self) -> u32 {
        self.entries[0].1.digits()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_invariants() {
        let one = BigReal::from_f64(1.0, 40);
        let zero = BigReal::from_f64(0.0, 40);
        assert!(matches!(RelationProblem::new(vec![("a".into(), one.clone())]), Err(RelationError::TooFewEntries(1))));
        assert!(matches!(
            RelationProblem::new(vec![("a".into(), one.clone()), ("b".into(), zero)]),
            Err(RelationError::ZeroEntry(l)) if l == "b"
        ));
        let other = BigReal::from_f64(2.0, 50);
        assert!(matches!(
            RelationProblem::new(vec![("a".into(), one), ("b".into(), other)]),
            Err(RelationError::MixedPrecision(40, 50))
        ));
    }
}

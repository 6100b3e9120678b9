//! Exact rational algebra for mixed Euler sums: closed forms, partial
//! fractions, reduction to basic sums and the known-value table.

use thiserror::Error;

mod closed_form;
mod identities;
mod knowledge;
mod partial_fractions;
mod reduce;

pub use closed_form::{Atom, ClosedForm, ConstantSource, Monomial};
pub use identities::{euler_sigma1, i2_minus_s2, i_from_s, j_from_sigma, j_reflection, s_from_i, sh2_odd, sh2_odd_variant, sigma_odd_weight, sigma_reflection, Sh2Variant};
pub use knowledge::{closed_form_of, emit_closed_form, is_reserved, KnowledgeTable};
pub use partial_fractions::{evaluate_at, multiply as multiply_partial_fractions, partial_fractions, PartialFractions};
pub use reduce::{reduce, reduce_traced, shift_reduce, Reduction, SumExpr, MAX_REDUCE_ORDER, TRACE_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("divergent configuration: {0}")]
    Divergent(String),
    #[error("{0} has non-integer shifts")]
    NotIntegerShift(String),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: u32, max: u32 },
    #[error("{step} step raised the order from {before} to {after}")]
    OrderIncreased { step: String, before: u32, after: u32 },
    #[error("rewrite cap exceeded; stuck at {0}")]
    IterationCap(String),
    #[error("no closed form known for {0}")]
    Unresolved(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("constant unavailable: {0}")]
    Constant(String),
}

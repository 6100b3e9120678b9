//! Mixed Euler sum specifications and their high-precision evaluation.

mod engine;
mod partial;
mod spec;

pub use spec::{Factor, MixedSumSpec, SpecError};
pub use engine::{choose_cutoff, eval_auto, eval_general, eval_mixed, model_log10_error, EvalError, EvalReport, MIN_CUTOFF};
pub use partial::{harmonic_prefixes, partial_sum_exact, partial_sums_exact, FiniteShape, PartialSumError, MAX_EXACT_TERMS};

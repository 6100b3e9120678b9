use rug::Float;

use super::appendix::{appendix_constant, appendix_precision};
use crate::numerics::{log2, zeta_float, PrecisionContext};
use crate::sums::{eval_auto, MixedSumSpec};
use crate::symbolic::{Atom, ConstantSource, SymbolicError};

/// Zeta values and log 2 from the numerics module; reserved sums from the
/// embedded digits when they are long enough, else from the sum engine.
#[derive(Debug, Clone, Copy)]
pub struct StandardConstants {
    prefer_embedded: bool,
}

impl Default for StandardConstants {
    fn default() -> Self {
        Self { prefer_embedded: true }
    }
}

impl StandardConstants {
    /// Never uses embedded digits; every reserved sum is recomputed.
    pub fn engine_only() -> Self {
        Self { prefer_embedded: false }
    }
}

impl ConstantSource for StandardConstants {
    fn value(&self, atom: &Atom, ctx: &PrecisionContext) -> Result<Float, SymbolicError> {
        let bits = ctx.bits();
        match *atom {
            Atom::Log2 => Ok(log2(ctx).into_value()),
            Atom::Zeta(n) => zeta_float(n, bits).map_err(|e| SymbolicError::Constant(e.to_string())),
            Atom::Reserved(a, b) => {
                if self.prefer_embedded && appendix_precision(a, b).is_some_and(|p| p >= ctx.total_digits()) {
                    let v = appendix_constant(a, b).map_err(|e| SymbolicError::Constant(e.to_string()))?;
                    return Ok(Float::with_val(bits, v.value()));
                }
                let spec = MixedSumSpec::basic(a, b).map_err(|e| SymbolicError::Constant(e.to_string()))?;
                let r = eval_auto(&spec, ctx).map_err(|e| SymbolicError::Constant(format!("M({a},{b}): {e}")))?;
                Ok(Float::with_val(bits, r.value.value()))
            }
        }
    }
}

//! Harmonic Stieltjes constants.
//!
//! For each p the finite identity
//!
//! ```text
//! sum_{k<=n} H_k^(p-1)/k - H_n^p/p = D_1 H_n^(p) + sum_{q=2}^{p-1} D_q sum_{k<=n} H_k^(q-1)/k^(p-q+1)
//! ```
//!
//! holds with rational D_q, and the (k+1) analogue holds with E_q and upper
//! limit n-1 on every left and right sum. Letting n grow gives gamma^H_p and
//! gamma^h_p in terms of zeta(p) and basic sums.

mod coeffs;

use rayon::prelude::*;
use rug::Float;
use thiserror::Error;

use crate::numerics::{euler_gamma, zeta_float, BigReal, NumericsError, PrecisionContext};
use crate::sums::{eval_auto, EvalError, MixedSumSpec, SpecError};
use crate::symbolic::{ClosedForm, KnowledgeTable, SymbolicError};

pub use coeffs::{check_identity, d_coeffs, e_coeffs, identity_residual, CoeffKind, CoeffRow, MAX_P};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StieltjesError {
    #[error("p = {p} outside {min}..={max}")]
    OutOfRange { p: u32, min: u32, max: u32 },
    #[error("singular system for p = {0}")]
    Singular(u32),
    #[error("{kind} row p = {p} fails the identity at n = {n}")]
    Verification { kind: CoeffKind, p: u32, n: u64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Largest p for which the limits are evaluated (needs order-p sums).
pub const MAX_GAMMA_P: u32 = 12;

fn check_gamma_p(p: u32) -> Result<(), StieltjesError> {
    if !(2..=MAX_GAMMA_P).contains(&p) {
        return Err(StieltjesError::OutOfRange { p, min: 2, max: MAX_GAMMA_P });
    }
    Ok(())
}

/// Coefficient rows for a range of p, solved in parallel.
pub fn coeff_table(kind: CoeffKind, ps: &[u32]) -> Result<Vec<CoeffRow>, StieltjesError> {
    ps.par_iter()
        .map(|&p| match kind {
            CoeffKind::D => d_coeffs(p),
            CoeffKind::E => e_coeffs(p),
        })
        .collect()
}

// c_1 zeta(p) + sum_q c_q S(q-1, p-q+1); every sum goes through the engine,
// including the slowly converging q = p-1 term.
fn limit_value(row: &CoeffRow, ctx: &PrecisionContext) -> Result<BigReal, StieltjesError> {
    let p = row.p;
    let bits = ctx.bits();
    let mut acc = zeta_float(p, bits)?;
    acc *= &row.coefficients[0];
    for q in 2..p {
        let spec = match row.kind {
            CoeffKind::D => MixedSumSpec::basic(q - 1, p - q + 1)?,
            CoeffKind::E => MixedSumSpec::s_h(q - 1, p - q + 1)?,
        };
        let r = eval_auto(&spec, ctx)?;
        acc += Float::with_val(bits, r.value.value() * &row.coefficients[q as usize - 1]);
    }
    Ok(BigReal::new(acc, ctx.working_digits))
}

/// gamma^H_p = D_1 zeta(p) + sum_q D_q M(q-1, p-q+1).
#[allow(non_snake_case)]
pub fn gamma_H(p: u32, ctx: &PrecisionContext) -> Result<BigReal, StieltjesError> {
    check_gamma_p(p)?;
    limit_value(&d_coeffs(p)?, ctx)
}

/// gamma^h_p = E_1 zeta(p) + sum_q E_q s_h(q-1, p-q+1). Always negative.
pub fn gamma_h_alt(p: u32, ctx: &PrecisionContext) -> Result<BigReal, StieltjesError> {
    check_gamma_p(p)?;
    limit_value(&e_coeffs(p)?, ctx)
}

/// gamma^H_p as an exact combination of zetas and reserved basic sums, from
/// the D row and the knowledge table.
#[allow(non_snake_case)]
pub fn gamma_H_closed_form(p: u32) -> Result<ClosedForm, StieltjesError> {
    check_gamma_p(p)?;
    let row = d_coeffs(p)?;
    let table = KnowledgeTable::standard();
    let mut out = ClosedForm::zeta(p).scaled(&row.coefficients[0]);
    for q in 2..p {
        let basic = table.basic(q - 1, p - q + 1)?;
        out.add_scaled(&row.coefficients[q as usize - 1], &basic);
    }
    Ok(out)
}

/// [e^gamma]_m = 1 + sum_{q=1}^{m} gamma^q/q!.
pub fn trunc_exp_gamma(m: u32, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.bits();
    let gamma = euler_gamma(ctx).into_value();
    let mut term = Float::with_val(bits, 1);
    let mut sum = Float::with_val(bits, 1);
    for q in 1..=m {
        term *= &gamma;
        term /= q;
        sum += &term;
    }
    BigReal::new(sum, ctx.working_digits)
}

/// N_m = integral_1^inf (log k + gamma)^m / k^2 dk = m! [e^gamma]_m.
pub fn n_integral(m: u32, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.bits();
    let mut v = trunc_exp_gamma(m, ctx).into_value();
    v *= Float::with_val(bits, factorial(m));
    BigReal::new(v, ctx.working_digits)
}

/// Integral estimate of gamma^H_p: [e^gamma]_{p-2} (p-1)!/2.
pub fn gamma_estimate(p: u32, ctx: &PrecisionContext) -> Result<BigReal, StieltjesError> {
    if p < 3 {
        return Err(StieltjesError::OutOfRange { p, min: 3, max: u32::MAX });
    }
    let bits = ctx.bits();
    let mut v = trunc_exp_gamma(p - 2, ctx).into_value();
    v *= Float::with_val(bits, factorial(p - 1));
    v /= 2u32;
    Ok(BigReal::new(v, ctx.working_digits))
}

fn factorial(m: u32) -> rug::Integer {
    rug::Integer::factorial(m).into()
}

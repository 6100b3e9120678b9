use std::path::Path;

use rayon::prelude::*;
use rug::Float;

use super::constants::StandardConstants;
use super::grammar::{ParseError, Parser};
use super::DbError;
use crate::numerics::{agreement_digits, log10_abs, BigReal, PrecisionContext};
use crate::sums::{eval_auto, MixedSumSpec};
use crate::symbolic::{ClosedForm, ConstantSource};

/// One closed-form result: lhs sum = rhs constant combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRecord {
    pub lhs: MixedSumSpec,
    pub rhs: ClosedForm,
    pub source: String,
    pub verified_digits: Option<u32>,
}

/// Parses `LHS = RHS ; src=TAG ; digits=N`.
pub fn parse_formula(line: &str) -> Result<FormulaRecord, ParseError> {
    let mut p = Parser::new(line);
    let lhs = p.spec()?;
    p.expect('=')?;
    let rhs = p.expr()?;
    let mut source = String::new();
    let mut verified_digits = None;
    for (key, value, column) in p.annotations()? {
        match key.as_str() {
            "src" => source = value,
            "digits" => {
                verified_digits = Some(value.parse().map_err(|_| ParseError {
                    column,
                    message: format!("digits={value} is not an integer"),
                })?)
            }
            _ => return Err(ParseError { column, message: format!("unknown annotation '{key}'") }),
        }
    }
    p.finish()?;
    Ok(FormulaRecord { lhs, rhs, source, verified_digits })
}

/// Parses a whole corpus; `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<FormulaRecord>, DbError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_formula(line).map_err(|source| DbError::Parse { line: i + 1, source })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<FormulaRecord>, DbError> {
    let text = std::fs::read_to_string(path).map_err(|e| DbError::Io(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// Outcome of checking one record numerically.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub pass: bool,
    pub achieved_digits: f64,
    pub lhs: BigReal,
    pub rhs: BigReal,
}

/// Which side of a record failed to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

/// Evaluates both sides at `ctx` and passes when |lhs - rhs| < 10^-tol_digits.
pub fn verify_formula(record: &FormulaRecord, ctx: &PrecisionContext, tol_digits: u32) -> Result<VerifyReport, DbError> {
    verify_with(record, ctx, tol_digits, &StandardConstants::default())
}

pub fn verify_with(
    record: &FormulaRecord,
    ctx: &PrecisionContext,
    tol_digits: u32,
    source: &dyn ConstantSource,
) -> Result<VerifyReport, DbError> {
    let lhs = eval_auto(&record.lhs, ctx)
        .map_err(|e| DbError::Eval { side: Side::Lhs, message: e.to_string() })?
        .value;
    let rhs = record
        .rhs
        .evaluate(source, ctx)
        .map_err(|e| DbError::Eval { side: Side::Rhs, message: e.to_string() })?;
    let diff = Float::with_val(ctx.bits(), lhs.value() - rhs.value());
    let pass = diff.is_zero() || log10_abs(&diff) < -(tol_digits as f64);
    let achieved_digits = agreement_digits(lhs.value(), rhs.value()).min(ctx.working_digits as f64);
    Ok(VerifyReport { pass, achieved_digits, lhs, rhs })
}

/// Verifies records with at most `workers` threads; results keep input order.
pub fn verify_all(
    records: &[FormulaRecord],
    ctx: &PrecisionContext,
    tol_digits: u32,
    workers: usize,
) -> Vec<Result<VerifyReport, DbError>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build();
    let job = || records.par_iter().map(|r| verify_formula(r, ctx, tol_digits)).collect();
    match pool {
        Ok(pool) => pool.install(job),
        Err(_) => records.iter().map(|r| verify_formula(r, ctx, tol_digits)).collect(),
    }
}

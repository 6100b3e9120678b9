//! Python bindings: evaluation, discovery, reduction, Stieltjes rows and
//! corpus verification. Values cross the boundary as decimal strings so no
//! precision is lost; relation coefficients become Python ints and rational
//! coefficients `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use eulersum::formula_db::{parse_closed_form, parse_corpus, parse_spec, verify_all, StandardConstants, CORE_CORPUS};
use eulersum::numerics::{format_significant, log10_abs, BigReal, PrecisionContext};
use eulersum::relation::{discover_with, probe_basis, pslq, PslqMode, PslqOptions, PslqOutcome, RelationProblem};
use eulersum::stieltjes::{d_coeffs, e_coeffs, gamma_H, gamma_estimate, CoeffRow};
use eulersum::sums::{eval_auto, eval_general, MixedSumSpec};
use eulersum::symbolic::{emit_closed_form, reduce_traced, KnowledgeTable};

create_exception!(eulersum_py, ParseError, PyValueError);
create_exception!(eulersum_py, EvaluationError, PyValueError);
create_exception!(eulersum_py, NoRelationError, PyValueError);

fn ctx(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn spec(text: &str) -> PyResult<MixedSumSpec> {
    parse_spec(text).map_err(|e| ParseError::new_err(format!("cannot parse '{text}'\n{}", e.caret(text))))
}

fn eval_err(e: impl std::fmt::Display) -> PyErr {
    EvaluationError::new_err(e.to_string())
}

fn mode(name: &str) -> PyResult<PslqMode> {
    match name {
        "multipair" => Ok(PslqMode::Multipair),
        "classic" => Ok(PslqMode::Classic),
        other => Err(PyValueError::new_err(format!("unknown mode '{other}' (multipair or classic)"))),
    }
}

fn py_int<'py>(py: Python<'py>, s: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((s,))
}

fn fractions<'py>(py: Python<'py>, row: &CoeffRow) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    row.coefficients.iter().map(|c| fraction.call1((c.to_string(),))).collect()
}

/// One evaluation; `value` holds the requested digits as a decimal string.
#[pyclass(frozen, get_all)]
pub struct EvalResult {
    spec: String,
    value: String,
    digits: u32,
    cutoff: u64,
    em_order: u32,
    error_log10: f64,
    seconds: f64,
}

#[pymethods]
impl EvalResult {
    fn __float__(&self) -> f64 {
        self.value.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!("EvalResult({} = {}, k={}, s={})", self.spec, self.value, self.cutoff, self.em_order)
    }
}

/// Evaluates a sum such as "M(1;2)" or "S(1;(2,1,2))". Without cutoff and
/// em_order both are chosen from the requested digits.
#[pyfunction]
#[pyo3(signature = (spec_text, digits = 60, cutoff = None, em_order = None))]
fn evaluate(py: Python<'_>, spec_text: &str, digits: u32, cutoff: Option<u64>, em_order: Option<u32>) -> PyResult<EvalResult> {
    let s = spec(spec_text)?;
    let c = ctx(digits)?;
    let r = py
        .detach(|| match (cutoff, em_order) {
            (None, None) => eval_auto(&s, &c),
            (k, o) => eval_general(&s, &c, k.unwrap_or(1_000_000), o.unwrap_or(21)),
        })
        .map_err(eval_err)?;
    Ok(EvalResult {
        spec: s.to_string(),
        value: format_significant(r.value.value(), digits),
        digits,
        cutoff: r.cutoff,
        em_order: r.em_order,
        error_log10: log10_abs(r.error_estimate.value()),
        seconds: r.wall_time.as_secs_f64(),
    })
}

/// A closed form found by PSLQ.
#[pyclass(frozen, get_all)]
pub struct Discovery {
    spec: String,
    closed_form: String,
    /// the form as 1/L*(...)
    over_lcm: String,
    basis: Vec<String>,
    iteration: usize,
    dynamic_range_log10: f64,
    weak: bool,
    relation: Vec<Py<PyAny>>,
}

#[pymethods]
impl Discovery {
    fn __repr__(&self) -> String {
        format!("Discovery({} = {}, dynamic range 1e{:.2})", self.spec, self.over_lcm, self.dynamic_range_log10)
    }
}

/// Finds the closed form of a sum. Raises NoRelationError with the norm
/// bound when none exists at this precision.
#[pyfunction]
#[pyo3(signature = (spec_text, digits = 60, mode_name = "multipair"))]
fn discover(py: Python<'_>, spec_text: &str, digits: u32, mode_name: &str) -> PyResult<Discovery> {
    let s = spec(spec_text)?;
    let c = ctx(digits)?;
    let m = mode(mode_name)?;
    let d = py.detach(|| discover_with(&s, &c, &StandardConstants::default(), m)).map_err(|e| match e {
        eulersum::relation::RelationError::NoRelation { .. } => NoRelationError::new_err(e.to_string()),
        other => eval_err(other),
    })?;
    let relation = d.relation_vector().into_iter().map(|a| py_int(py, a.to_string()).map(Bound::unbind)).collect::<PyResult<_>>()?;
    Ok(Discovery {
        spec: s.to_string(),
        closed_form: d.closed_form.to_string(),
        over_lcm: d.closed_form.render_over_lcm(),
        basis: d.basis.labels(),
        iteration: d.relation.detected_at_iteration,
        dynamic_range_log10: d.relation.dynamic_range_log10(),
        weak: d.relation.is_weak(),
        relation,
    })
}

/// PSLQ on the order-r basis alone: returns the log10 norm bound, or raises
/// EvaluationError if the basis turns out to be dependent.
#[pyfunction]
#[pyo3(signature = (order = 8, digits = 200))]
fn exclusion_bound(py: Python<'_>, order: u32, digits: u32) -> PyResult<f64> {
    let c = ctx(digits)?;
    let (_, outcome) = py.detach(|| probe_basis(order, &c, &StandardConstants::default(), PslqMode::Multipair)).map_err(eval_err)?;
    match outcome {
        PslqOutcome::Exclusion(b) => Ok(b.log10()),
        PslqOutcome::Relation(r) => Err(eval_err(format!("basis relation found: {:?}", r.coefficients))),
    }
}

/// Integer relation among decimal strings, or None with no relation.
#[pyfunction]
#[pyo3(signature = (values, digits, mode_name = "multipair"))]
fn find_relation(py: Python<'_>, values: Vec<String>, digits: u32, mode_name: &str) -> PyResult<Option<Vec<Py<PyAny>>>> {
    let c = ctx(digits)?;
    let entries = values
        .iter()
        .enumerate()
        .map(|(i, v)| BigReal::from_decimal(v, digits).map(|x| (format!("x{i}"), x)).map_err(|e| PyValueError::new_err(e.to_string())))
        .collect::<PyResult<Vec<_>>>()?;
    let problem = RelationProblem::new(entries).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let opts = PslqOptions::new(mode(mode_name)?, eulersum::relation::detection_threshold(&c), 100_000);
    match py.detach(|| pslq(&problem, &opts)).map_err(eval_err)? {
        PslqOutcome::Relation(r) => {
            Ok(Some(r.coefficients.iter().map(|a| py_int(py, a.to_string()).map(Bound::unbind)).collect::<PyResult<_>>()?))
        }
        PslqOutcome::Exclusion(_) => Ok(None),
    }
}

/// The reduction trace and the final closed form.
#[pyfunction]
fn reduce(spec_text: &str) -> PyResult<(Vec<String>, String)> {
    let s = spec(spec_text)?;
    let r = reduce_traced(&s).map_err(eval_err)?;
    let form = emit_closed_form(&r.expr, KnowledgeTable::standard()).map_err(eval_err)?;
    Ok((r.trace, form.to_string()))
}

/// Evaluates a closed form such as "7/4*z3 - log2" or "M(2,6)".
#[pyfunction]
#[pyo3(signature = (text, digits = 60))]
fn constant(text: &str, digits: u32) -> PyResult<String> {
    let form = parse_closed_form(text).map_err(|e| ParseError::new_err(format!("cannot parse '{text}'\n{}", e.caret(text))))?;
    let v = form.evaluate(&StandardConstants::default(), &ctx(digits)?).map_err(eval_err)?;
    Ok(format_significant(v.value(), digits))
}

#[pyfunction]
fn d_row<'py>(py: Python<'py>, p: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, &d_coeffs(p).map_err(eval_err)?)
}

#[pyfunction]
fn e_row<'py>(py: Python<'py>, p: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, &e_coeffs(p).map_err(eval_err)?)
}

/// gamma^H_p and its integral estimate as decimal strings.
#[pyfunction]
#[pyo3(signature = (p, digits = 30))]
fn harmonic_stieltjes(py: Python<'_>, p: u32, digits: u32) -> PyResult<(String, String)> {
    let c = ctx(digits)?;
    let (g, est) = py.detach(|| Ok::<_, eulersum::stieltjes::StieltjesError>((gamma_H(p, &c)?, gamma_estimate(p, &c)?))).map_err(eval_err)?;
    Ok((format_significant(g.value(), digits), format_significant(est.value(), digits)))
}

/// Verifies a corpus (the bundled core corpus by default); one
/// (formula, passed, digits) tuple per record.
#[pyfunction]
#[pyo3(signature = (corpus = None, tol = 40, digits = 60, workers = 1))]
fn verify(py: Python<'_>, corpus: Option<&str>, tol: u32, digits: u32, workers: usize) -> PyResult<Vec<(String, bool, f64)>> {
    let records = parse_corpus(corpus.unwrap_or(CORE_CORPUS)).map_err(|e| ParseError::new_err(e.to_string()))?;
    let c = ctx(digits)?;
    let results = py.detach(|| verify_all(&records, &c, tol, workers));
    Ok(records
        .iter()
        .zip(results)
        .map(|(r, res)| {
            let (pass, d) = res.map(|v| (v.pass, v.achieved_digits)).unwrap_or((false, 0.0));
            (format!("{} = {}", r.lhs, r.rhs), pass, d)
        })
        .collect())
}

#[pymodule]
fn eulersum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("EvaluationError", py.get_type::<EvaluationError>())?;
    m.add("NoRelationError", py.get_type::<NoRelationError>())?;
    m.add_class::<EvalResult>()?;
    m.add_class::<Discovery>()?;
    for f in [
        wrap_pyfunction!(evaluate, m)?,
        wrap_pyfunction!(discover, m)?,
        wrap_pyfunction!(exclusion_bound, m)?,
        wrap_pyfunction!(find_relation, m)?,
        wrap_pyfunction!(reduce, m)?,
        wrap_pyfunction!(constant, m)?,
        wrap_pyfunction!(d_row, m)?,
        wrap_pyfunction!(e_row, m)?,
        wrap_pyfunction!(harmonic_stieltjes, m)?,
        wrap_pyfunction!(verify, m)?,
    ] {
        m.add_function(f)?;
    }
    Ok(())
}

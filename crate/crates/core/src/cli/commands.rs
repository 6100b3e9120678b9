use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rug::Float;

use super::{CliConfig, CliError, ModeArg, OutputFormat, TableKind};
use crate::formula_db::{
    cache_load, cache_store, parse_closed_form, parse_corpus, parse_spec, verify_all, ConstantCacheEntry, DbError, FormulaRecord,
    ParseError, StandardConstants, APPENDIX_CORPUS, CORE_CORPUS, KNOWLEDGE_CORPUS,
};
use crate::numerics::{euler_gamma, format_significant, format_truncated, log10_abs, pi, BigReal, PrecisionContext};
use crate::relation::{discover_with, probe_basis, PslqMode, PslqOutcome, RelationError, StopReason};
use crate::stieltjes::{coeff_table, gamma_H, gamma_estimate, gamma_h_alt, n_integral, CoeffKind};
use crate::sums::{eval_auto, eval_general, EvalReport, MixedSumSpec};
use crate::symbolic::{emit_closed_form, reduce_traced, ConstantSource, KnowledgeTable};

// significant digits of the printed tables
const TABLE_DIGITS: u32 = 11;
const RATIO_DIGITS: u32 = 6;

fn context(cfg: &CliConfig) -> Result<PrecisionContext, CliError> {
    PrecisionContext::new(cfg.digits).map_err(|e| CliError::Input(e.to_string()))
}

fn caret(text: &str, e: &ParseError) -> CliError {
    CliError::Parse(format!("cannot parse '{text}'\n{}", e.caret(text)))
}

fn spec_arg(text: &str) -> Result<MixedSumSpec, CliError> {
    parse_spec(text.trim()).map_err(|e| caret(text.trim(), &e))
}

/// Fixed point with `digits` places after the point, so that small values
/// keep `digits` significant digits too.
pub(crate) fn fixed(x: &Float, digits: u32) -> String {
    let int_digits = if x.is_zero() { 0 } else { log10_abs(x).floor().max(-1.0) as i64 + 1 };
    format_significant(x, (digits as i64 + int_digits.max(0)) as u32)
}

fn machine_line(fields: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            s.push('\t');
        }
        let _ = write!(s, "{k}={v}");
    }
    s.push('\n');
    s
}

/// Evaluates with the configured k and s, or with automatic ones.
pub fn cmd_eval(text: &str, auto: bool, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = spec_arg(text)?;
    let ctx = context(cfg)?;
    let report = if auto { eval_auto(&spec, &ctx) } else { eval_general(&spec, &ctx, cfg.cutoff, cfg.em_order) }
        .map_err(|e| CliError::Eval(format!("{spec}: {e}")))?;
    write_eval(&spec, &report, cfg, out)
}

fn write_eval(spec: &MixedSumSpec, r: &EvalReport, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let value = fixed(r.value.value(), cfg.digits);
    let err = log10_abs(r.error_estimate.value());
    match cfg.format {
        OutputFormat::Plain => {
            writeln!(out, "{value}")?;
            writeln!(
                out,
                "{spec}: cutoff {}, em order {}, error estimate 1e{err:.1}, {:.2} s",
                r.cutoff,
                r.em_order,
                r.wall_time.as_secs_f64()
            )?;
        }
        OutputFormat::Machine => out.write_all(
            machine_line(&[
                ("spec", spec.to_string()),
                ("value", value),
                ("digits", cfg.digits.to_string()),
                ("cutoff", r.cutoff.to_string()),
                ("em_order", r.em_order.to_string()),
                ("error_log10", format!("{err:.1}")),
            ])
            .as_bytes(),
        )?,
    }
    Ok(())
}

fn mode(m: ModeArg) -> PslqMode {
    match m {
        ModeArg::Multipair => PslqMode::Multipair,
        ModeArg::Classic => PslqMode::Classic,
    }
}

fn write_trace(path: Option<&Path>, trace: &[f64]) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let mut body = String::from("iteration\tlog10_min_y\n");
    for (i, v) in trace.iter().enumerate() {
        let _ = writeln!(body, "{i}\t{v:.4}");
    }
    std::fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn relation_error(spec: &str, e: RelationError) -> CliError {
    match e {
        RelationError::NoRelation { .. } | RelationError::PrecisionExhausted { .. } | RelationError::SumNotInvolved => {
            CliError::NoRelation(format!("{spec}: {e}"))
        }
        other => CliError::Eval(format!("{spec}: {other}")),
    }
}

/// Finds the closed form of one sum from its numerical value.
pub fn cmd_discover(
    text: &str,
    m: ModeArg,
    log: Option<&Path>,
    cfg: &CliConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = spec_arg(text)?;
    let ctx = context(cfg)?;
    let d = discover_with(&spec, &ctx, &StandardConstants::default(), mode(m)).map_err(|e| relation_error(&spec.to_string(), e))?;
    write_trace(log, &d.relation.trace)?;
    let rel = d.relation_vector().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    let dr = d.relation.dynamic_range_log10();
    match cfg.format {
        OutputFormat::Plain => {
            writeln!(out, "{spec} = {}", d.closed_form.render_over_lcm())?;
            writeln!(out, "relation ({rel}) over [{spec}, {}]", d.basis.labels().join(", "))?;
            writeln!(out, "detected at iteration {}, dynamic range 1e{dr:.2}", d.relation.detected_at_iteration)?;
        }
        OutputFormat::Machine => out.write_all(
            machine_line(&[
                ("spec", spec.to_string()),
                ("closed_form", d.closed_form.render_over_lcm()),
                ("relation", rel),
                ("iteration", d.relation.detected_at_iteration.to_string()),
                ("dynamic_range_log10", format!("{dr:.2}")),
                ("weak", d.relation.is_weak().to_string()),
            ])
            .as_bytes(),
        )?,
    }
    if d.relation.is_weak() {
        writeln!(err, "warning: dynamic range 1e{dr:.2} is below 1e20; the relation may be spurious")?;
    }
    Ok(())
}

/// PSLQ over the basis constants alone; reports the exclusion bound and
/// exits with the no-relation code when none is found.
pub fn cmd_discover_basis(order: u32, m: ModeArg, log: Option<&Path>, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let label = format!("order-{order} basis");
    let (basis, outcome) =
        probe_basis(order, &ctx, &StandardConstants::default(), mode(m)).map_err(|e| relation_error(&label, e))?;
    match outcome {
        PslqOutcome::Relation(r) => {
            write_trace(log, &r.trace)?;
            let rel = r.coefficients.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
            match cfg.format {
                OutputFormat::Plain => writeln!(out, "{label} is dependent: ({rel}) over {basis}")?,
                OutputFormat::Machine => out.write_all(machine_line(&[("order", order.to_string()), ("relation", rel)]).as_bytes())?,
            }
            Ok(())
        }
        PslqOutcome::Exclusion(b) => {
            write_trace(log, &b.trace)?;
            let reason = match b.reason {
                StopReason::PrecisionExhausted => "precision-exhausted",
                StopReason::IterationLimit => "iteration-limit",
            };
            let bound = b.log10();
            match cfg.format {
                OutputFormat::Plain => {
                    writeln!(out, "basis {basis}")?;
                    writeln!(
                        out,
                        "no relation at {} digits: any relation has norm above 1e{bound:.2} ({} iterations, {reason})",
                        cfg.digits, b.iterations
                    )?;
                }
                OutputFormat::Machine => out.write_all(
                    machine_line(&[
                        ("order", order.to_string()),
                        ("size", basis.len().to_string()),
                        ("digits", cfg.digits.to_string()),
                        ("bound_log10", format!("{bound:.2}")),
                        ("iterations", b.iterations.to_string()),
                        ("reason", reason.to_string()),
                    ])
                    .as_bytes(),
                )?,
            }
            Err(CliError::NoRelation(format!("{label}: no relation, norm bound 1e{bound:.2}")))
        }
    }
}

/// Prints the versioned rewrite trace, then `= closed form`.
pub fn cmd_reduce(text: &str, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = spec_arg(text)?;
    let red = reduce_traced(&spec).map_err(|e| CliError::Eval(format!("{spec}: {e}")))?;
    let form = emit_closed_form(&red.expr, KnowledgeTable::standard()).map_err(|e| CliError::Eval(format!("{spec}: {e}")))?;
    match cfg.format {
        OutputFormat::Plain => {
            for line in &red.trace {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "= {form}")?;
        }
        OutputFormat::Machine => {
            for (i, line) in red.trace.iter().enumerate() {
                out.write_all(machine_line(&[("step", i.to_string()), ("text", line.clone())]).as_bytes())?;
            }
            out.write_all(machine_line(&[("spec", spec.to_string()), ("closed_form", form.to_string())]).as_bytes())?;
        }
    }
    Ok(())
}

fn ratio(a: &BigReal, b: &BigReal, bits: u32) -> Float {
    Float::with_val(bits, a.value() / b.value())
}

/// Coefficient rows and constant tables in the layout of the printed ones.
pub fn cmd_stieltjes(kind: TableKind, range: RangeInclusive<u32>, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let ev = |e: crate::stieltjes::StieltjesError| CliError::Eval(e.to_string());
    let ps: Vec<u32> = range.collect();
    let ctx = context(cfg)?;
    let bits = ctx.bits();
    let plain = cfg.format == OutputFormat::Plain;
    let num = |x: &Float, sig: u32| if plain { format_truncated(x, sig) } else { format_significant(x, cfg.digits) };
    match kind {
        TableKind::D | TableKind::E => {
            let ck = if kind == TableKind::D { CoeffKind::D } else { CoeffKind::E };
            for row in coeff_table(ck, &ps).map_err(ev)? {
                if plain {
                    writeln!(out, "{:>2} | {row}", row.p)?;
                } else {
                    let cs = row.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                    out.write_all(machine_line(&[("kind", ck.to_string()), ("p", row.p.to_string()), ("coefficients", cs)]).as_bytes())?;
                }
            }
        }
        TableKind::GammaH => {
            if plain {
                writeln!(out, " p | gamma_H | estimate | ratio")?;
            }
            for p in ps {
                let g = gamma_H(p, &ctx).map_err(ev)?;
                let est = gamma_estimate(p, &ctx).map_err(ev)?;
                let r = ratio(&est, &g, bits);
                let cells = [num(g.value(), TABLE_DIGITS), num(est.value(), TABLE_DIGITS), num(&r, RATIO_DIGITS)];
                table_row(out, plain, "p", p, &["gamma_H", "estimate", "ratio"], &cells)?;
            }
        }
        TableKind::Gammah | TableKind::Estimate => {
            let name = if kind == TableKind::Gammah { "gamma_h" } else { "estimate" };
            if plain {
                writeln!(out, " p | {name}")?;
            }
            for p in ps {
                let v = if kind == TableKind::Gammah { gamma_h_alt(p, &ctx) } else { gamma_estimate(p, &ctx) }.map_err(ev)?;
                table_row(out, plain, "p", p, &[name], &[num(v.value(), TABLE_DIGITS)])?;
            }
        }
        TableKind::Im2 => {
            if plain {
                writeln!(out, " m | M(m;2) | N_m | ratio")?;
            }
            for m in ps {
                let spec = MixedSumSpec::basic(m, 2).map_err(|e| CliError::Input(e.to_string()))?;
                let sum = eval_general(&spec, &ctx, cfg.cutoff, cfg.em_order).map_err(|e| CliError::Eval(format!("{spec}: {e}")))?.value;
                let n = n_integral(m, &ctx);
                let r = ratio(&n, &sum, bits);
                let cells = [num(sum.value(), TABLE_DIGITS), num(n.value(), TABLE_DIGITS), num(&r, RATIO_DIGITS)];
                table_row(out, plain, "m", m, &["sum", "n_integral", "ratio"], &cells)?;
            }
        }
    }
    Ok(())
}

fn table_row(out: &mut dyn Write, plain: bool, key: &str, p: u32, names: &[&str], cells: &[String]) -> Result<(), CliError> {
    if plain {
        writeln!(out, "{p:>2} | {}", cells.join(" | "))?;
    } else {
        let mut fields = vec![(key, p.to_string())];
        fields.extend(names.iter().copied().zip(cells.iter().cloned()));
        out.write_all(machine_line(&fields).as_bytes())?;
    }
    Ok(())
}

/// A corpus path, or one of the bundled corpora when the path does not
/// exist and its stem is core, appendix or knowledge.
fn corpus_text(path: Option<&PathBuf>) -> Result<(String, String), CliError> {
    let Some(path) = path else { return Ok(("core".into(), CORE_CORPUS.into())) };
    if let Ok(text) = std::fs::read_to_string(path) {
        return Ok((path.display().to_string(), text));
    }
    let bundled = match path.file_stem().and_then(|s| s.to_str()) {
        Some("core") => CORE_CORPUS,
        Some("appendix") => APPENDIX_CORPUS,
        Some("knowledge") => KNOWLEDGE_CORPUS,
        _ => return Err(CliError::Input(format!("{}: cannot read corpus", path.display()))),
    };
    Ok((path.display().to_string(), bundled.into()))
}

fn load_records(name: &str, text: &str) -> Result<Vec<FormulaRecord>, CliError> {
    parse_corpus(text).map_err(|e| match e {
        DbError::Parse { line, source } => {
            let raw = text.lines().nth(line - 1).unwrap_or("");
            CliError::Parse(format!("{name}:{line}: {}", source.caret(raw)))
        }
        other => CliError::Input(other.to_string()),
    })
}

/// Verifies every record; results print in corpus order.
pub fn cmd_verify(tol: u32, workers: usize, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, text) = corpus_text(cfg.corpus.as_ref())?;
    let records = load_records(&name, &text)?;
    let ctx = context(cfg)?;
    let results = verify_all(&records, &ctx, tol, workers);
    let mut passed = 0;
    for (i, (rec, res)) in records.iter().zip(&results).enumerate() {
        let formula = format!("{} = {}", rec.lhs, rec.rhs);
        let (status, digits, note) = match res {
            Ok(r) if r.pass => {
                passed += 1;
                ("PASS", format!("{:.1}", r.achieved_digits), String::new())
            }
            Ok(r) => ("FAIL", format!("{:.1}", r.achieved_digits), String::new()),
            Err(e) => ("ERROR", "-".to_string(), e.to_string()),
        };
        match cfg.format {
            OutputFormat::Plain if note.is_empty() => writeln!(out, "{status:<5} {digits:>6}  {formula}")?,
            OutputFormat::Plain => writeln!(out, "{status:<5} {digits:>6}  {formula}  ({note})")?,
            OutputFormat::Machine => {
                let mut f = vec![("record", (i + 1).to_string()), ("status", status.to_lowercase()), ("digits", digits), ("formula", formula)];
                if !note.is_empty() {
                    f.push(("error", note));
                }
                out.write_all(machine_line(&f).as_bytes())?;
            }
        }
    }
    let total = records.len();
    match cfg.format {
        OutputFormat::Plain => writeln!(out, "passed {passed} of {total} (tolerance 1e-{tol}, {} digits)", cfg.digits)?,
        OutputFormat::Machine => out.write_all(
            machine_line(&[("summary", name.clone()), ("passed", passed.to_string()), ("total", total.to_string())]).as_bytes(),
        )?,
    }
    if passed < total {
        return Err(CliError::Verification(format!("{} of {total} records failed in {name}", total - passed)));
    }
    Ok(())
}

fn constant_value(name: &str, ctx: &PrecisionContext) -> Result<BigReal, CliError> {
    match name {
        "pi" => Ok(pi(ctx)),
        "gamma" => Ok(euler_gamma(ctx)),
        _ => {
            let form = parse_closed_form(name).map_err(|e| caret(name, &e))?;
            let v = form.evaluate(&StandardConstants::default() as &dyn ConstantSource, ctx);
            v.map_err(|e| CliError::Eval(format!("{name}: {e}")))
        }
    }
}

/// Prints constants to the configured digits, reading and filling the
/// cache when one is configured.
pub fn cmd_constants(names: &[String], cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let cache_err = |e: DbError| CliError::Input(format!("cache: {e}"));
    for name in names {
        let cached = match &cfg.cache {
            Some(path) => cache_load(path, name).map_err(cache_err)?.filter(|e| e.precision >= cfg.digits),
            None => None,
        };
        let value = match cached {
            Some(entry) => BigReal::from_decimal(&entry.digits, entry.precision).map_err(|e| CliError::Input(format!("cache: {e}")))?,
            None => {
                let v = constant_value(name, &ctx)?;
                if let Some(path) = &cfg.cache {
                    let entry = ConstantCacheEntry::computed(name, cfg.digits, &format_significant(v.value(), cfg.digits));
                    cache_store(path, &entry).map_err(cache_err)?;
                }
                v
            }
        };
        let text = format_significant(value.value(), cfg.digits);
        match cfg.format {
            OutputFormat::Plain => writeln!(out, "{name} = {text}")?,
            OutputFormat::Machine => out.write_all(machine_line(&[("name", name.clone()), ("value", text)]).as_bytes())?,
        }
    }
    Ok(())
}

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::closed_form::{Atom, ClosedForm};
use super::reduce::{reduce, SumExpr};
use super::SymbolicError;
use crate::formula_db::{parse_corpus, DbError, FormulaRecord, KNOWLEDGE_CORPUS, RESERVED};
use crate::sums::MixedSumSpec;

/// Known closed forms of basic sums, keyed by spec.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeTable {
    entries: BTreeMap<MixedSumSpec, ClosedForm>,
}

impl KnowledgeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: &[FormulaRecord]) -> Self {
        let mut t = Self::new();
        for r in records {
            t.insert(r.lhs.clone(), r.rhs.clone());
        }
        t
    }

    pub fn from_corpus(text: &str) -> Result<Self, DbError> {
        Ok(Self::from_records(&parse_corpus(text)?))
    }

    /// The bundled table of basic sums I(m,n) and s_h(m,n) up to order 12.
    pub fn standard() -> &'static KnowledgeTable {
        static TABLE: OnceLock<KnowledgeTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::from_corpus(KNOWLEDGE_CORPUS).expect("bundled knowledge table parses"))
    }

    pub fn insert(&mut self, spec: MixedSumSpec, value: ClosedForm) {
        self.entries.insert(spec, value);
    }

    pub fn get(&self, spec: &MixedSumSpec) -> Option<&ClosedForm> {
        self.entries.get(spec)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MixedSumSpec, &ClosedForm)> {
        self.entries.iter()
    }

    /// Closed form of I(m,n); reserved sums come back as themselves.
    pub fn basic(&self, m: u32, n: u32) -> Result<ClosedForm, SymbolicError> {
        if is_reserved(m, n) {
            return Ok(ClosedForm::atom(Atom::Reserved(m, n)));
        }
        let spec = MixedSumSpec::basic(m, n).map_err(|e| SymbolicError::Divergent(e.to_string()))?;
        self.get(&spec).cloned().ok_or_else(|| SymbolicError::Unresolved(spec.to_string()))
    }
}

/// Is M(a,b) one of the sums kept as a named constant?
pub fn is_reserved(a: u32, b: u32) -> bool {
    RESERVED.contains(&(a, b))
}

/// Substitutes table entries for every sum in `expr`.
pub fn emit_closed_form(expr: &SumExpr, table: &KnowledgeTable) -> Result<ClosedForm, SymbolicError> {
    let mut out = expr.constant().clone();
    for (spec, q) in expr.sums() {
        let value = match spec.as_basic() {
            Some((a, b)) if is_reserved(a, b) => ClosedForm::atom(Atom::Reserved(a, b)),
            _ => table.get(spec).cloned().ok_or_else(|| SymbolicError::Unresolved(spec.to_string()))?,
        };
        out.add_scaled(q, &value);
    }
    Ok(out)
}

/// reduce followed by emit against the standard table.
pub fn closed_form_of(spec: &MixedSumSpec) -> Result<ClosedForm, SymbolicError> {
    emit_closed_form(&reduce(spec)?, KnowledgeTable::standard())
}

//! Closed-form corpus: text grammar, embedded reserved constants, numeric
//! verification and the constant cache.
//!
//! Corpus lines look like
//!
//! ```text
//! M(2;0,0,2) = -3 + 2*z3 + 11/4*z4 ; src=shifted ; digits=60
//! S(1;(2,1,2)) = 7/4*z3 - 3/2*log2*z2
//! ```
//!
//! Tokens: `zK` is zeta(K), `log2`, `M(a,b)` a basic sum kept as a constant,
//! integers, `+ - * / ^` and parentheses. `#` starts a comment.

use thiserror::Error;

mod appendix;
mod cache;
mod constants;
mod grammar;
mod record;

pub use appendix::{appendix_constant, appendix_constant_by_name, appendix_digits, appendix_precision, RESERVED};
pub use cache::{cache_load, cache_read_all, cache_store, ConstantCacheEntry, Provenance};
pub use constants::StandardConstants;
pub use grammar::{parse_closed_form, parse_spec, ParseError};
pub use record::{load_corpus, parse_corpus, parse_formula, verify_all, verify_formula, verify_with, FormulaRecord, Side, VerifyReport};

/// Bundled corpus: basic sums, log 2 sums and a sample of mixed sums.
pub const CORE_CORPUS: &str = include_str!("../../data/core.efm");
/// Bundled mixed-sum formulas for orders 3 through 12.
pub const APPENDIX_CORPUS: &str = include_str!("../../data/appendix.efm");
/// Bundled table of basic and shifted basic sums.
pub const KNOWLEDGE_CORPUS: &str = include_str!("../../data/knowledge.efm");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DbError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("{side} evaluation failed: {message}")]
    Eval { side: Side, message: String },
    #[error("cache line {line}: {message}")]
    Cache { line: usize, message: String },
    #[error("i/o: {0}")]
    Io(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpora_parse_and_round_trip() {
        for text in [CORE_CORPUS, APPENDIX_CORPUS, KNOWLEDGE_CORPUS] {
            let recs = parse_corpus(text).unwrap();
            assert!(!recs.is_empty());
            for r in recs {
                assert_eq!(parse_formula(&r.to_string()).unwrap(), r);
            }
        }
    }

    #[test]
    fn corpus_coverage() {
        let core = parse_corpus(CORE_CORPUS).unwrap();
        let count = |tag: &str| core.iter().filter(|r| r.source == tag).count();
        assert_eq!(count("log2"), 5);
        assert_eq!(count("order-3"), 6);
        assert_eq!(count("order-4"), 16);
        let sampled: usize = (5..=12).map(|o| count(&format!("order-{o}"))).sum();
        assert!(sampled >= 40);
        assert_eq!(parse_corpus(APPENDIX_CORPUS).unwrap().len(), 1014);
    }
}

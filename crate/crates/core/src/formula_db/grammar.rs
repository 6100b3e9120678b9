use std::fmt;

use rug::{Integer, Rational};
use thiserror::Error;

use crate::sums::{Factor, MixedSumSpec};
use crate::symbolic::{Atom, ClosedForm};

/// Syntax error at a 1-based character column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    /// The offending line with a caret under the error column.
    pub fn caret(&self, line: &str) -> String {
        format!("{line}\n{}^ {}", " ".repeat(self.column.saturating_sub(1)), self.message)
    }
}

pub(crate) struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Self { chars: src.chars().collect(), pos: 0, _src: src }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.pos + 1, message: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => self.err(format!("expected '{c}', found '{d}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let n = w.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let col = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| ParseError { column: col + 1, message: format!("integer {d} out of range") })
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    pub(crate) fn spec(&mut self) -> Result<MixedSumSpec, ParseError> {
        let start = self.pos;
        if self.eat('M') {
            self.expect('(')?;
            let m = self.small()?;
            self.expect(';')?;
            let mut ns = vec![self.small()?];
            while self.eat(',') {
                ns.push(self.small()?);
            }
            self.expect(')')?;
            MixedSumSpec::mixed(m, &ns).map_err(|e| ParseError { column: start + 1, message: e.to_string() })
        } else if self.eat('S') {
            self.expect('(')?;
            let m = self.small()?;
            self.expect(';')?;
            let mut factors = Vec::new();
            loop {
                self.expect('(')?;
                let a = self.small()?;
                self.expect(',')?;
                let b = self.small()?;
                self.expect(',')?;
                let e = self.small()?;
                self.expect(')')?;
                factors.push(Factor { a, b, e });
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(')')?;
            MixedSumSpec::general(m, factors).map_err(|e| ParseError { column: start + 1, message: e.to_string() })
        } else {
            self.err("expected a sum 'M(m;n0,...)' or 'S(m;(a,b,e),...)'")
        }
    }

    pub(crate) fn expr(&mut self) -> Result<ClosedForm, ParseError> {
        let mut acc = ClosedForm::zero();
        let mut sign = Rational::from(1);
        if self.eat('-') {
            sign = Rational::from(-1);
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&sign, &t);
            if self.eat('+') {
                sign = Rational::from(1);
            } else if self.eat('-') {
                sign = Rational::from(-1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ClosedForm, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.peek() == Some('/') {
                let col = self.pos;
                self.pos += 1;
                let f = self.factor()?;
                match f.as_rational() {
                    Some(q) if q != 0 => acc = acc.scaled(&q.recip()),
                    _ => {
                        return Err(ParseError { column: col + 1, message: "division by a non-rational or zero".into() })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if self.eat('^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<ClosedForm, ParseError> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        let base = if c.is_ascii_digit() {
            let d = self.digits()?;
            ClosedForm::rational(Rational::from(d.parse::<Integer>().expect("digit string")))
        } else if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            e
        } else if self.eat_word("log2") {
            ClosedForm::atom(Atom::Log2)
        } else if c == 'z' {
            self.pos += 1;
            let col = self.pos;
            let n = self.small()?;
            if n < 2 {
                return Err(ParseError { column: col + 1, message: format!("zeta({n}) is not allowed") });
            }
            ClosedForm::zeta(n)
        } else if c == 'M' {
            self.pos += 1;
            self.expect('(')?;
            let a = self.small()?;
            self.expect(',')?;
            let b = self.small()?;
            self.expect(')')?;
            ClosedForm::atom(Atom::Reserved(a, b))
        } else {
            return self.err(format!("unknown token starting with '{c}'"));
        };
        let p = self.power()?;
        let mut out = ClosedForm::rational(Rational::from(1));
        for _ in 0..p {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `; key=value` annotations.
    pub(crate) fn annotations(&mut self) -> Result<Vec<(String, String, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.eat(';') {
            self.skip_ws();
            let col = self.pos + 1;
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                self.pos += 1;
            }
            let key: String = self.chars[start..self.pos].iter().collect();
            if key.is_empty() {
                return self.err("expected an annotation key");
            }
            self.expect('=')?;
            self.skip_ws();
            let vstart = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| *c != ';' && !c.is_whitespace()) {
                self.pos += 1;
            }
            let value: String = self.chars[vstart..self.pos].iter().collect();
            out.push((key, value, col));
        }
        Ok(out)
    }
}

/// Parses `M(m;n0,...)` or `S(m;(a,b,e),...)`.
pub fn parse_spec(text: &str) -> Result<MixedSumSpec, ParseError> {
    let mut p = Parser::new(text);
    let s = p.spec()?;
    p.finish()?;
    Ok(s)
}

/// Parses a closed form such as `-3 + 2*z3 + 11/4*z4`.
pub fn parse_closed_form(text: &str) -> Result<ClosedForm, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

impl fmt::Display for super::FormulaRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)?;
        if !self.source.is_empty() {
            write!(f, " ; src={}", self.source)?;
        }
        if let Some(d) = self.verified_digits {
            write!(f, " ; digits={d}")?;
        }
        Ok(())
    }
}

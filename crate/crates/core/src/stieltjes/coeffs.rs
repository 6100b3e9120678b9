use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::StieltjesError;
use crate::sums::{harmonic_prefixes, partial_sums_exact, FiniteShape, MAX_EXACT_TERMS};

/// Largest p accepted by the coefficient solvers.
pub const MAX_P: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// denominators k, upper limit n
    D,
    /// denominators k+1, upper limit n-1
    E,
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffKind::D => "D",
            CoeffKind::E => "E",
        })
    }
}

/// One row of coefficients c_1..c_{p-1} for a given p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    pub p: u32,
    pub kind: CoeffKind,
    pub coefficients: Vec<Rational>,
}

impl CoeffRow {
    /// 1/p plus the coefficient sum; equals 1 for D rows (the n = 1 case).
    pub fn unity_sum(&self) -> Rational {
        let mut s = Rational::from((1, self.p));
        for c in &self.coefficients {
            s += c;
        }
        s
    }

    /// Checks the structure seen in the printed tables: D rows start
    /// (-1)^p/p, then -(-1)^p, and the tail from q = 3 is symmetric for even
    /// p and antisymmetric for odd p; E rows are all negative.
    pub fn has_expected_shape(&self) -> bool {
        let c = &self.coefficients;
        if c.len() != self.p as usize - 1 {
            return false;
        }
        match self.kind {
            CoeffKind::E => c.iter().all(|x| *x < 0),
            CoeffKind::D => {
                let sign = if self.p.is_multiple_of(2) { 1 } else { -1 };
                if c[0] != (sign, self.p) {
                    return false;
                }
                if self.p == 2 {
                    return true;
                }
                if c[1] != -sign {
                    return false;
                }
                let tail = &c[2..];
                tail.iter().zip(tail.iter().rev()).all(|(a, b)| if sign == 1 { a == b } else { *a == -b.clone() })
            }
        }
    }
}

impl fmt::Display for CoeffRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

// Exact data for the identity of one (kind, p) up to n_max.
struct Columns {
    kind: CoeffKind,
    p: u32,
    lead: Vec<Rational>,
    h1: Vec<Rational>,
    hp: Vec<Rational>,
    inner: Vec<Vec<Rational>>,
}

impl Columns {
    fn new(kind: CoeffKind, p: u32, n_max: u64) -> Self {
        let (lead_shape, inner_shape): (FiniteShape, fn(u32) -> FiniteShape) = match kind {
            CoeffKind::D => (FiniteShape::OverK, FiniteShape::OverKPower),
            CoeffKind::E => (FiniteShape::OverKPlus1, FiniteShape::OverKPlus1Power),
        };
        Self {
            kind,
            p,
            lead: partial_sums_exact(p, n_max, lead_shape),
            h1: harmonic_prefixes(1, n_max),
            hp: harmonic_prefixes(p, n_max),
            inner: (2..p).map(|q| partial_sums_exact(q, n_max, inner_shape(p - q + 1))).collect(),
        }
    }

    // index into the finite sums at n
    fn at(&self, n: u64) -> usize {
        match self.kind {
            CoeffKind::D => n as usize,
            CoeffKind::E => n as usize - 1,
        }
    }

    /// (columns, lhs) of the identity at n.
    fn equation(&self, n: u64) -> (Vec<Rational>, Rational) {
        let i = self.at(n);
        let lhs = &self.lead[i] - Rational::from((&self.h1[n as usize]).pow(self.p)) / self.p ;
        let mut cols = vec![self.hp[n as usize].clone()];
        cols.extend(self.inner.iter().map(|v| v[i].clone()));
        (cols, lhs)
    }
}

fn check_p(p: u32) -> Result<(), StieltjesError> {
    if !(2..=MAX_P).contains(&p) {
        return Err(StieltjesError::OutOfRange { p, min: 2, max: MAX_P });
    }
    Ok(())
}

fn solve_row(kind: CoeffKind, p: u32) -> Result<CoeffRow, StieltjesError> {
    check_p(p)?;
    let unknowns = p as usize - 1;
    let checks = [p as u64, p as u64 + 7];
    let cols = Columns::new(kind, p, checks[1]);
    let (a, b): (Vec<_>, Vec<_>) = (1..=unknowns as u64).map(|n| cols.equation(n)).unzip();
    let x = bareiss_solve(a, b).ok_or(StieltjesError::Singular(p))?;
    let row = CoeffRow { p, kind, coefficients: x };
    for n in checks {
        if residual_from(&cols, &row, n) != 0 {
            return Err(StieltjesError::Verification { kind, p, n });
        }
    }
    Ok(row)
}

/// D_{p,1}..D_{p,p-1}, solved exactly from the identity at n = 1..p-1 and
/// checked at n = p and n = p+7.
pub fn d_coeffs(p: u32) -> Result<CoeffRow, StieltjesError> {
    solve_row(CoeffKind::D, p)
}

/// E_{p,1}..E_{p,p-1} for the (k+1) identity, solved and checked the same way.
pub fn e_coeffs(p: u32) -> Result<CoeffRow, StieltjesError> {
    solve_row(CoeffKind::E, p)
}

fn residual_from(cols: &Columns, row: &CoeffRow, n: u64) -> Rational {
    let (c, lhs) = cols.equation(n);
    let mut r = lhs;
    for (ci, xi) in c.iter().zip(&row.coefficients) {
        r -= Rational::from(ci * xi);
    }
    r
}

/// Left side minus right side of the row's identity at n (zero when it holds).
pub fn identity_residual(row: &CoeffRow, n: u64) -> Result<Rational, StieltjesError> {
    check_p(row.p)?;
    if n == 0 || n > MAX_EXACT_TERMS {
        return Err(StieltjesError::OutOfRange { p: row.p, min: 1, max: MAX_EXACT_TERMS as u32 });
    }
    Ok(residual_from(&Columns::new(row.kind, row.p, n), row, n))
}

/// Checks the identity exactly for every n in 1..=n_max.
pub fn check_identity(row: &CoeffRow, n_max: u64) -> Result<(), StieltjesError> {
    check_p(row.p)?;
    if n_max > MAX_EXACT_TERMS {
        return Err(StieltjesError::OutOfRange { p: row.p, min: 1, max: MAX_EXACT_TERMS as u32 });
    }
    let cols = Columns::new(row.kind, row.p, n_max);
    for n in 1..=n_max {
        if residual_from(&cols, row, n) != 0 {
            return Err(StieltjesError::Verification { kind: row.kind, p: row.p, n });
        }
    }
    Ok(())
}

// Fraction-free elimination: rows are scaled to integers, then eliminated
// with exact Bareiss division; only back substitution uses rationals.
fn bareiss_solve(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    let m = b.len();
    let mut mat: Vec<Vec<Integer>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            let lcm = row.iter().fold(Integer::from(1), |l, x| l.lcm(x.denom()));
            row.into_iter().map(|x| (x * &lcm).into_numer_denom().0).collect()
        })
        .collect();
    let mut prev = Integer::from(1);
    for k in 0..m {
        let piv = (k..m).find(|&i| mat[i][k] != 0)?;
        mat.swap(k, piv);
        for i in k + 1..m {
            for j in k + 1..=m {
                let v = Integer::from(&mat[i][j] * &mat[k][k]) - Integer::from(&mat[i][k] * &mat[k][j]);
                mat[i][j] = v.div_exact(&prev);
            }
            mat[i][k] = Integer::new();
        }
        prev = mat[k][k].clone();
    }
    let mut x = vec![Rational::new(); m];
    for i in (0..m).rev() {
        let mut acc = Rational::from(&mat[i][m]);
        for j in i + 1..m {
            acc -= Rational::from(&mat[i][j] * &x[j]);
        }
        x[i] = acc / &mat[i][i];
    }
    Some(x)
}

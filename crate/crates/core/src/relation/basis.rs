use std::fmt;

use rug::Float;

use super::RelationError;
use crate::numerics::PrecisionContext;
use crate::symbolic::{Atom, ClosedForm, ConstantSource, Monomial, SymbolicError};

pub const MIN_BASIS_ORDER: u32 = 3;
pub const MAX_BASIS_ORDER: u32 = 12;

use Atom::{Reserved as R, Zeta as Z};

// Constants added at each order, 3 through 12.
const ADDED: [&[&[(Atom, u32)]]; 10] = [
    &[&[], &[(Z(2), 1)], &[(Z(3), 1)]],
    &[&[(Z(4), 1)]],
    &[&[(Z(5), 1)], &[(Z(2), 1), (Z(3), 1)]],
    &[&[(Z(6), 1)], &[(Z(3), 2)]],
    &[&[(Z(7), 1)], &[(Z(2), 1), (Z(5), 1)], &[(Z(3), 1), (Z(4), 1)]],
    &[&[(Z(8), 1)], &[(Z(2), 1), (Z(3), 2)], &[(Z(3), 1), (Z(5), 1)], &[(R(2, 6), 1)]],
    &[&[(Z(9), 1)], &[(Z(2), 1), (Z(7), 1)], &[(Z(3), 1), (Z(6), 1)], &[(Z(4), 1), (Z(5), 1)], &[(Z(3), 3)]],
    &[
        &[(Z(10), 1)],
        &[(Z(3), 1), (Z(7), 1)],
        &[(Z(3), 2), (Z(4), 1)],
        &[(Z(2), 1), (Z(3), 1), (Z(5), 1)],
        &[(Z(5), 2)],
        &[(Z(2), 1), (R(2, 6), 1)],
        &[(R(2, 8), 1)],
    ],
    &[
        &[(Z(11), 1)],
        &[(Z(2), 1), (Z(9), 1)],
        &[(Z(3), 1), (Z(8), 1)],
        &[(Z(4), 1), (Z(7), 1)],
        &[(Z(5), 1), (Z(6), 1)],
        &[(Z(2), 1), (Z(3), 3)],
        &[(Z(5), 1), (Z(3), 2)],
        &[(Z(3), 1), (R(2, 6), 1)],
        &[(R(3, 8), 1)],
    ],
    &[
        &[(Z(12), 1)],
        &[(Z(3), 1), (Z(9), 1)],
        &[(Z(5), 1), (Z(7), 1)],
        &[(Z(2), 1), (Z(5), 2)],
        &[(Z(2), 1), (Z(3), 1), (Z(7), 1)],
        &[(Z(3), 1), (Z(4), 1), (Z(5), 1)],
        &[(Z(3), 2), (Z(6), 1)],
        &[(Z(3), 4)],
        &[(Z(4), 1), (R(2, 6), 1)],
        &[(Z(2), 1), (R(2, 8), 1)],
        &[(R(2, 10), 1)],
        &[(R(4, 8), 1)],
    ],
];

/// The cumulative list of constants spanning all sums up to a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    pub order: u32,
    pub elements: Vec<Monomial>,
}

/// Basis for order r, in the listed order, starting 1, zeta(2), zeta(3).
pub fn basis_for_order(r: u32) -> Result<BasisSpec, RelationError> {
    if !(MIN_BASIS_ORDER..=MAX_BASIS_ORDER).contains(&r) {
        return Err(RelationError::OrderOutOfRange(r));
    }
    let mut elements = Vec::new();
    for list in &ADDED[..=(r - MIN_BASIS_ORDER) as usize] {
        for factors in list.iter() {
            let (c, m) = Monomial::from_factors(factors);
            debug_assert_eq!(c, 1);
            elements.push(m);
        }
    }
    Ok(BasisSpec { order: r, elements })
}

impl BasisSpec {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements first introduced at this order.
    pub fn added(&self) -> &[Monomial] {
        let before = match self.order {
            MIN_BASIS_ORDER => 0,
            r => basis_for_order(r - 1).map(|b| b.len()).unwrap_or(0),
        };
        &self.elements[before..]
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|m| m.to_string()).collect()
    }

    pub fn values(&self, source: &dyn ConstantSource, ctx: &PrecisionContext) -> Result<Vec<Float>, SymbolicError> {
        self.elements
            .iter()
            .map(|m| ClosedForm::term(1, m.clone()).evaluate(source, ctx).map(|v| v.into_value()))
            .collect()
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels().join(", "))
    }
}

//! Mixed Euler sums to high precision: Euler-Maclaurin evaluation, multipair
//! PSLQ relation finding, exact symbolic reduction and harmonic Stieltjes
//! constants.

pub mod numerics;
pub mod harmonic;
pub mod sums;
pub mod symbolic;
pub mod formula_db;
pub mod relation;
pub mod stieltjes;
pub mod cli;

pub use sums::MixedSumSpec;

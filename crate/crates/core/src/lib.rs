//! Frobenius numbers of the numerical semigroups generated by shifted squares
//! `a, a + 1², a + 2², …`.
//!
//! * [`squares`]: the minimal number of positive squares `ι(n)`, by arithmetic
//!   and by exhaustive dynamic programming.
//! * [`semigroup`]: generator sets, Apéry sets and brute-force Frobenius numbers.
//! * [`formula`]: the max-r characterization and the closed form for `4 | a`.
//! * [`scan`]: range verification of the formulas against the oracle.

pub mod error;
pub mod formula;
pub mod scan;
pub mod semigroup;
pub mod squares;

pub use error::{Error, Result};
pub use formula::{
    frobenius_closed_form, frobenius_via_max_r, max_r, max_r_bounds_check, Branch, FrobeniusResult,
    Method,
};
pub use scan::{empirical_max_r_profile, scan_range, ScanConfig, ScanRecord, ScanReport};
pub use semigroup::{
    frobenius_bruteforce, frobenius_sieve, shifted_square_generators, AperySet, GeneratorSet,
    ShiftedSquareSequence,
};
pub use squares::{
    classify, decompose, iota, iota_oracle, IotaTable, SquareDecomposition, SquaresClass,
};

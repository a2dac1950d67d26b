//! Frobenius numbers of `⟨a, a + 1², a + 2², …⟩` without enumerating the
//! semigroup.
//!
//! [`frobenius_via_max_r`] uses the characterization
//! `F = 3a + max{ r ∈ [1, a-1] : ι(r) = 4, ι(a+r) ≥ 3, ι(2a+r) ≥ 2 }`, valid
//! whenever such an `r` exists. [`frobenius_closed_form`] is the piecewise
//! linear answer for `4 | a`:
//!
//! | case                                                          | F        |
//! |---------------------------------------------------------------|----------|
//! | `8 | a`                                                       | `4a - 1` |
//! | `a ≡ 4 (mod 8)` and (`a - 4 ≠ 4^e(8m+7)` or `2a - 4 = x²+y²`) | `4a - 5` |
//! | otherwise                                                     | `4a - 4` |

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::AperySet;
use crate::squares::{iota, is_sum_of_two_squares, legendre_form, LegendreForm};

/// Largest `a` accepted here: keeps `4a` inside `i64`.
pub const MAX_FORMULA_SHIFT: u64 = (i64::MAX / 4) as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "closed")]
    ClosedForm,
    #[serde(rename = "maxr")]
    MaxR,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::MaxR => "maxr",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which case of the closed form applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "B8")]
    B8,
    #[serde(rename = "B4_minus5")]
    B4Minus5,
    #[serde(rename = "B4_minus4")]
    B4Minus4,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::B8 => "B8",
            Branch::B4Minus5 => "B4_minus5",
            Branch::B4Minus4 => "B4_minus4",
        }
    }

    /// `F + offset = 4a`.
    pub fn offset(self) -> i64 {
        match self {
            Branch::B8 => 1,
            Branch::B4Minus5 => 5,
            Branch::B4Minus4 => 4,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A Frobenius number together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusResult {
    pub value: i64,
    pub method: Method,
    /// The maximizing `r`, for [`Method::MaxR`].
    pub witness_r: Option<u64>,
    /// The closed-form case, for [`Method::ClosedForm`].
    pub branch: Option<Branch>,
    /// Apéry set of the multiplicity, for [`Method::Oracle`].
    #[serde(skip)]
    pub apery: Option<AperySet>,
}

fn check_shift(a: u64, floor: u64) -> Result<()> {
    if a < floor {
        return Err(Error::domain(format!("requires a >= {floor}; got a = {a}")));
    }
    if a > MAX_FORMULA_SHIFT {
        return Err(Error::domain(format!(
            "a = {a} exceeds {MAX_FORMULA_SHIFT}, the largest shift with a representable 4a"
        )));
    }
    Ok(())
}

/// Whether `r` meets all three iota conditions for shift `a`.
pub fn admissible_r(a: u64, r: u64) -> Result<bool> {
    Ok(iota(r)? == 4 && iota(a + r)? >= 3 && iota(2 * a + r)? >= 2)
}

/// The largest admissible `r` in `[1, a-1]`, searching down from `a - 1`.
pub fn max_r(a: u64) -> Result<Option<u64>> {
    check_shift(a, 2)?;
    for r in (1..a).rev() {
        if admissible_r(a, r)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

pub fn frobenius_via_max_r(a: u64) -> Result<FrobeniusResult> {
    let r = max_r(a)?.ok_or(Error::HypothesisFailure { a })?;
    Ok(FrobeniusResult {
        value: 3 * a as i64 + r as i64,
        method: Method::MaxR,
        witness_r: Some(r),
        branch: None,
        apery: None,
    })
}

fn require_multiple_of_four(a: u64) -> Result<()> {
    check_shift(a, 8)?;
    if a % 4 != 0 {
        return Err(Error::domain(format!(
            "closed form applies only to multiples of 4; got a = {a}"
        )));
    }
    Ok(())
}

/// Checks `max_r(a)` against the residue-class prediction: `a - 1` when
/// `8 | a`, one of `a - 5`, `a - 4` when `a ≡ 4 (mod 8)`.
pub fn max_r_bounds_check(a: u64) -> Result<bool> {
    require_multiple_of_four(a)?;
    let Some(r) = max_r(a)? else {
        return Ok(false);
    };
    Ok(if a % 8 == 0 {
        r == a - 1
    } else {
        r == a - 5 || r == a - 4
    })
}

/// Inputs to the `a ≡ 4 (mod 8)` case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueFourConditions {
    /// `a - 4 = 4^e(8m + 7)`, if it is of that form.
    pub shifted_form: Option<LegendreForm>,
    /// `2a - 4 = x² + y²` with integers, zero allowed.
    pub double_two_squares: bool,
}

impl ResidueFourConditions {
    pub fn evaluate(a: u64) -> Result<Self> {
        Ok(Self {
            shifted_form: legendre_form(a - 4),
            double_two_squares: is_sum_of_two_squares(2 * a - 4)?,
        })
    }

    pub fn branch(&self) -> Branch {
        if self.shifted_form.is_none() || self.double_two_squares {
            Branch::B4Minus5
        } else {
            Branch::B4Minus4
        }
    }
}

/// The piecewise closed form, defined for `a >= 8` with `4 | a`.
pub fn frobenius_closed_form(a: u64) -> Result<FrobeniusResult> {
    require_multiple_of_four(a)?;
    let branch = if a % 8 == 0 {
        Branch::B8
    } else {
        ResidueFourConditions::evaluate(a)?.branch()
    };
    Ok(FrobeniusResult {
        value: 4 * a as i64 - branch.offset(),
        method: Method::ClosedForm,
        witness_r: None,
        branch: Some(branch),
        apery: None,
    })
}

//! Sums of squares.
//!
//! `iota(n)` is the least number of strictly positive squares summing to `n`.
//! Two independent routes compute it:
//!
//! * [`classify`] / [`iota`] go through arithmetic: an integer square root,
//!   trial-division factorization for the two-square criterion, and the
//!   `4^r(8t + 7)` test for three squares.
//! * [`IotaTable`] (and the per-call [`iota_oracle`]) evaluate the minimum
//!   directly by dynamic programming over all square subtractions. It knows
//!   nothing about primes or residues and exists to check the first route.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default upper bound on `n` for the dynamic-programming oracle.
pub const DEFAULT_IOTA_ORACLE_CAP: u64 = 10_000_000;

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::domain(
            "iota is defined on positive integers only; got 0",
        ))
    } else {
        Ok(())
    }
}

/// The four mutually exclusive square classes, in the order they are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SquaresClass {
    PerfectSquare,
    TwoSquares,
    FourSquares,
    ThreeSquares,
}

impl SquaresClass {
    pub const ALL: [SquaresClass; 4] = [
        SquaresClass::PerfectSquare,
        SquaresClass::TwoSquares,
        SquaresClass::FourSquares,
        SquaresClass::ThreeSquares,
    ];

    /// Minimal number of positive squares for members of this class.
    pub fn iota(self) -> u8 {
        match self {
            SquaresClass::PerfectSquare => 1,
            SquaresClass::TwoSquares => 2,
            SquaresClass::FourSquares => 4,
            SquaresClass::ThreeSquares => 3,
        }
    }

    /// Type number 1..=4 in classification order.
    pub fn type_number(self) -> u8 {
        match self {
            SquaresClass::PerfectSquare => 1,
            SquaresClass::TwoSquares => 2,
            SquaresClass::FourSquares => 3,
            SquaresClass::ThreeSquares => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SquaresClass::PerfectSquare => "PerfectSquare",
            SquaresClass::TwoSquares => "TwoSquares",
            SquaresClass::FourSquares => "FourSquares",
            SquaresClass::ThreeSquares => "ThreeSquares",
        }
    }
}

impl fmt::Display for SquaresClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recomputes the product of `prime^exponent`; `None` on overflow.
    pub fn product(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `n` written as a sum of `iota(n)` positive squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareDecomposition {
    pub n: u64,
    /// Square roots of the summands, non-increasing.
    pub parts: Vec<u64>,
}

impl fmt::Display for SquareDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}^2")?;
        }
        Ok(())
    }
}

/// `n = 4^e * (8m + 7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LegendreForm {
    pub e: u32,
    pub m: u64,
}

/// Splits `n` into `4^e * rest` with `rest` not divisible by 4.
pub fn strip_fours(mut n: u64) -> (u32, u64) {
    debug_assert!(n > 0);
    let mut e = 0;
    while n % 4 == 0 {
        n /= 4;
        e += 1;
    }
    (e, n)
}

/// Returns the `4^e(8m + 7)` representation of `n` if it has one.
pub fn legendre_form(n: u64) -> Option<LegendreForm> {
    if n == 0 {
        return None;
    }
    let (e, rest) = strip_fours(n);
    (rest % 8 == 7).then_some(LegendreForm { e, m: rest / 8 })
}

pub fn is_perfect_square(n: u64) -> Result<bool> {
    require_positive(n)?;
    Ok(square_root(n).is_some())
}

fn square_root(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<Factorization> {
    require_positive(n)?;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut rest, 2);
    let mut d = 3u64;
    while d <= rest / d {
        push(&mut rest, d);
        d += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// True iff `n = x^2 + y^2` for integers `x, y` (zero allowed), decided by
/// requiring every prime `p = 3 (mod 4)` to appear with an even exponent.
pub fn is_sum_of_two_squares(n: u64) -> Result<bool> {
    Ok(factorize(n)?
        .factors
        .iter()
        .all(|&(p, e)| p % 4 != 3 || e % 2 == 0))
}

/// Direct search for `x >= y >= 0` with `x^2 + y^2 = n`.
pub fn two_square_witness(n: u64) -> Result<Option<(u64, u64)>> {
    require_positive(n)?;
    Ok((0..=(n / 2).isqrt()).find_map(|y| square_root(n - y * y).map(|x| (x, y))))
}

/// True iff `n = x^2 + y^2 + z^2` for integers (zero allowed).
pub fn is_sum_of_three_squares(n: u64) -> Result<bool> {
    require_positive(n)?;
    Ok(legendre_form(n).is_none())
}

pub fn classify(n: u64) -> Result<SquaresClass> {
    // Order matters: a non-square that is a sum of two squares has both terms
    // nonzero, and likewise for three, so the zero-allowing tests give iota.
    Ok(if is_perfect_square(n)? {
        SquaresClass::PerfectSquare
    } else if is_sum_of_two_squares(n)? {
        SquaresClass::TwoSquares
    } else if !is_sum_of_three_squares(n)? {
        SquaresClass::FourSquares
    } else {
        SquaresClass::ThreeSquares
    })
}

pub fn iota(n: u64) -> Result<u8> {
    classify(n).map(SquaresClass::iota)
}

/// Table of `iota(0..=limit)` filled by dynamic programming.
///
/// `table[0] = 0` and `table[n] = 1 + min table[n - k^2]` over `1 <= k^2 <= n`.
/// The scan for each `n` stops early only once it has reached a value that
/// the squares already visited prove cannot be beaten.
#[derive(Debug, Clone)]
pub struct IotaTable {
    table: Vec<u8>,
}

impl IotaTable {
    /// Builds the table with the default cap.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_capped(limit, DEFAULT_IOTA_ORACLE_CAP)
    }

    pub fn build_capped(limit: u64, cap: u64) -> Result<Self> {
        if limit > cap {
            return Err(Error::Capacity {
                what: "iota oracle n",
                value: limit,
                cap,
            });
        }
        let limit = usize::try_from(limit).map_err(|_| Error::Capacity {
            what: "iota oracle n",
            value: limit,
            cap: usize::MAX as u64,
        })?;
        let mut table = vec![0u8; limit + 1];
        for n in 1..=limit {
            let root = n.isqrt();
            if root * root == n {
                table[n] = 1;
                continue;
            }
            // n is not a square, so 2 is the floor.
            let mut best = u8::MAX;
            for k in (1..=root).rev() {
                let cand = table[n - k * k] + 1;
                if cand < best {
                    best = cand;
                    if best == 2 {
                        break;
                    }
                }
            }
            table[n] = best;
        }
        Ok(Self { table })
    }

    pub fn limit(&self) -> u64 {
        (self.table.len() - 1) as u64
    }

    fn index(&self, n: u64) -> Result<usize> {
        require_positive(n)?;
        if n > self.limit() {
            return Err(Error::Capacity {
                what: "iota table lookup",
                value: n,
                cap: self.limit(),
            });
        }
        Ok(n as usize)
    }

    pub fn get(&self, n: u64) -> Result<u8> {
        Ok(self.table[self.index(n)?])
    }

    /// Recovers a shortest decomposition by walking back through the table.
    pub fn decompose(&self, n: u64) -> Result<SquareDecomposition> {
        let mut rest = self.index(n)?;
        let mut parts = Vec::with_capacity(4);
        while rest > 0 {
            let want = self.table[rest] - 1;
            let k = (1..=rest.isqrt())
                .rev()
                .find(|&k| self.table[rest - k * k] == want)
                .expect("every table entry has a predecessor one step closer to zero");
            parts.push(k as u64);
            rest -= k * k;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SquareDecomposition { n, parts })
    }
}

/// Exhaustive `iota(n)`, building a fresh table up to `n`.
pub fn iota_oracle(n: u64) -> Result<u8> {
    require_positive(n)?;
    IotaTable::build(n)?.get(n)
}

/// A decomposition of `n` into `iota(n)` positive squares.
pub fn decompose(n: u64) -> Result<SquareDecomposition> {
    require_positive(n)?;
    IotaTable::build(n)?.decompose(n)
}

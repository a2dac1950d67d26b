//! Numerical semigroups given by generators, and brute-force Frobenius
//! numbers that rely on no closed form.
//!
//! The workhorse is the Apéry set of `S` with respect to some `m ∈ S`: the
//! least element of `S` in each residue class mod `m`. It is a single-source
//! shortest-path problem on the residue graph (node `i` has an edge to
//! `(i + g) mod m` of weight `g` for every generator `g`), solved here with
//! round-robin relaxation: one pass per generator around each cycle of
//! `x -> x + g (mod m)`, started at the cycle's current minimum. That costs
//! `O(m)` per generator and gives `F(S) = max(Ap(S, m)) - m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{FrobeniusResult, Method};

/// Default cap on the shift `a` of a shifted-square sequence.
pub const DEFAULT_SHIFT_CAP: u64 = 1 << 20;

const UNREACHED: u64 = u64::MAX;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least element of `⟨generators⟩` in each residue class mod `modulus`.
///
/// Classes that no combination reaches stay at [`UNREACHED`].
fn round_robin(modulus: u64, generators: &[u64]) -> Vec<u64> {
    let m = modulus as usize;
    let mut least = vec![UNREACHED; m];
    least[0] = 0;
    for &g in generators {
        let step = (g % modulus) as usize;
        if step == 0 {
            continue;
        }
        let cycles = gcd(step as u64, modulus) as usize;
        let len = m / cycles;
        for start in 0..cycles {
            let mut lowest = start;
            let mut q = start;
            for _ in 0..len {
                if least[q] < least[lowest] {
                    lowest = q;
                }
                q = (q + step) % m;
            }
            if least[lowest] == UNREACHED {
                continue;
            }
            let mut q = lowest;
            for _ in 1..len {
                let next = (q + step) % m;
                let via = least[q] + g;
                if via < least[next] {
                    least[next] = via;
                }
                q = next;
            }
        }
    }
    least
}

/// Least semigroup element in each residue class mod `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperySet {
    pub modulus: u64,
    /// `elements[i]` is the least member congruent to `i`.
    pub elements: Vec<u64>,
}

impl AperySet {
    pub fn max(&self) -> u64 {
        self.elements.iter().copied().max().unwrap_or(0)
    }

    /// `max(elements) - modulus`; `-1` when the semigroup is all of ℕ.
    pub fn frobenius(&self) -> i64 {
        self.max() as i64 - self.modulus as i64
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.elements[(n % self.modulus) as usize]
    }
}

/// A minimal generating set of a numerical semigroup.
///
/// Construction sorts, removes duplicates, rejects sets whose gcd exceeds 1,
/// and drops every generator that is a sum of the others. The Apéry set with
/// respect to the multiplicity is kept for constant-time membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<u64>,
    apery: AperySet,
}

impl GeneratorSet {
    pub fn new(generators: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut gens: Vec<u64> = generators.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::domain("generator set is empty"));
        }
        if gens.contains(&0) {
            return Err(Error::domain("generators must be positive"));
        }
        gens.sort_unstable();
        gens.dedup();
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::domain(format!(
                "generators have gcd {d}; they do not generate a numerical semigroup"
            )));
        }

        let m = gens[0];
        // Within a residue class mod m only the smallest generator can be
        // minimal: any larger one is it plus a multiple of m.
        let mut seen = vec![false; m as usize];
        seen[0] = true;
        let mut candidates = vec![m];
        for &g in &gens[1..] {
            let r = (g % m) as usize;
            if !seen[r] {
                seen[r] = true;
                candidates.push(g);
            }
        }

        let elements = round_robin(m, &candidates);
        let apery = AperySet {
            modulus: m,
            elements,
        };

        let mut nonzero: Vec<u64> = apery.elements[1..].to_vec();
        nonzero.sort_unstable();
        let minimal: Vec<u64> = candidates
            .into_iter()
            .filter(|&g| {
                if g == m {
                    return true;
                }
                if apery.elements[(g % m) as usize] != g {
                    return false;
                }
                // g in Ap(S, m) is decomposable iff g = w + s with w a nonzero
                // Apéry element and s a nonzero member of S.
                !nonzero
                    .iter()
                    .take_while(|&&w| w < g)
                    .any(|&w| apery.contains(g - w))
            })
            .collect();

        Ok(Self {
            generators: minimal,
            apery,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest generator, which is also the smallest positive element.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.apery.contains(n)
    }

    /// Apéry set with respect to the multiplicity.
    pub fn multiplicity_apery(&self) -> &AperySet {
        &self.apery
    }

    pub fn apery_set(&self, m: u64) -> Result<AperySet> {
        if m == 0 {
            return Err(Error::domain("Apéry modulus must be positive"));
        }
        if !self.contains(m) {
            return Err(Error::domain(format!(
                "Apéry modulus {m} is not an element of the semigroup"
            )));
        }
        if m == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        let elements = round_robin(m, &self.generators);
        debug_assert!(elements.iter().all(|&e| e != UNREACHED));
        Ok(AperySet {
            modulus: m,
            elements,
        })
    }

    pub fn frobenius(&self) -> i64 {
        self.apery.frobenius()
    }

    /// The finite complement `ℕ \ S` in increasing order.
    pub fn gaps(&self) -> Vec<u64> {
        let f = self.frobenius();
        if f < 0 {
            return Vec::new();
        }
        (1..=f as u64).filter(|&n| !self.contains(n)).collect()
    }
}

pub fn contains(s: &GeneratorSet, n: u64) -> bool {
    s.contains(n)
}

pub fn apery_set(s: &GeneratorSet, m: u64) -> Result<AperySet> {
    s.apery_set(m)
}

pub fn gaps(s: &GeneratorSet) -> Vec<u64> {
    s.gaps()
}

/// Frobenius number from the Apéry set of the multiplicity.
pub fn frobenius_bruteforce(s: &GeneratorSet) -> FrobeniusResult {
    FrobeniusResult {
        value: s.frobenius(),
        method: Method::Oracle,
        witness_r: None,
        branch: None,
        apery: Some(s.multiplicity_apery().clone()),
    }
}

/// Frobenius number by a dense reachability sieve, independent of the
/// Apéry machinery. The sieve runs until `min(generators)` consecutive
/// members are found; memory is linear in the Frobenius number.
pub fn frobenius_sieve(generators: &[u64]) -> Result<i64> {
    let m = match generators.iter().copied().min() {
        Some(0) => return Err(Error::domain("generators must be positive")),
        Some(m) => m,
        None => return Err(Error::domain("generator set is empty")),
    };
    if generators.iter().fold(0, |acc, &g| gcd(acc, g)) != 1 {
        return Err(Error::domain("generators do not have gcd 1"));
    }
    let mut reach = vec![true];
    let mut run = 1u64;
    let mut last_gap = -1i64;
    while run < m {
        let n = reach.len() as u64;
        let hit = generators
            .iter()
            .any(|&g| g <= n && reach[(n - g) as usize]);
        reach.push(hit);
        if hit {
            run += 1;
        } else {
            run = 0;
            last_gap = n as i64;
        }
    }
    Ok(last_gap)
}

/// The sequence `a, a + 1², a + 2², …` cut off at `a + M²` with
/// `M = ⌈√(a² − a)⌉`.
///
/// `a` and `a + 1` already generate every integer above `a² − a − 1`, so no
/// later term can be a minimal generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftedSquareSequence {
    pub a: u64,
    pub truncation: u64,
}

impl ShiftedSquareSequence {
    pub fn new(a: u64) -> Result<Self> {
        Self::with_cap(a, DEFAULT_SHIFT_CAP)
    }

    pub fn with_cap(a: u64, cap: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::domain("shift a must be positive"));
        }
        if a > cap {
            return Err(Error::Capacity {
                what: "shift a",
                value: a,
                cap,
            });
        }
        if a > u32::MAX as u64 {
            return Err(Error::domain(format!(
                "shift a = {a} is too large for 64-bit squares"
            )));
        }
        let span = a * a - a;
        let root = span.isqrt();
        let truncation = if root * root == span { root } else { root + 1 };
        Ok(Self { a, truncation })
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.truncation).map(move |i| self.a + i * i)
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        // i and a - i give the same residue mod a with a + i² increasing in i,
        // so terms past a/2 never survive reduction.
        let useful = self.truncation.min(self.a / 2 + 1);
        GeneratorSet::new((0..=useful).map(|i| self.a + i * i))
    }
}

pub fn shifted_square_generators(a: u64) -> Result<GeneratorSet> {
    ShiftedSquareSequence::new(a)?.generator_set()
}

pub fn shifted_square_generators_capped(a: u64, cap: u64) -> Result<GeneratorSet> {
    ShiftedSquareSequence::with_cap(a, cap)?.generator_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(g: &[u64]) -> GeneratorSet {
        GeneratorSet::new(g.iter().copied()).unwrap()
    }

    #[test]
    fn reduction_and_validation() {
        assert_eq!(gs(&[17, 12, 9, 8, 8]).generators(), &[8, 9, 12]);
        assert_eq!(gs(&[4, 6, 9, 10, 15]).generators(), &[4, 6, 9]);
        assert_eq!(gs(&[1, 5, 7]).generators(), &[1]);
        assert!(matches!(
            GeneratorSet::new([4, 6, 10]),
            Err(Error::Domain(_))
        ));
        assert!(GeneratorSet::new([]).is_err());
        assert!(GeneratorSet::new([0, 1]).is_err());
    }

    #[test]
    fn shifted_square_sets() {
        assert_eq!(
            shifted_square_generators(8).unwrap().generators(),
            &[8, 9, 12]
        );
        assert_eq!(shifted_square_generators(1).unwrap().generators(), &[1]);
        assert_eq!(
            shifted_square_generators(12).unwrap().generators(),
            &[12, 13, 16, 21]
        );
        assert_eq!(
            shifted_square_generators(33).unwrap().generators(),
            &[33, 34, 37, 42, 49, 58, 69, 97, 114]
        );
        assert_eq!(ShiftedSquareSequence::new(8).unwrap().truncation, 8);
        assert!(matches!(
            shifted_square_generators_capped(101, 100),
            Err(Error::Capacity { .. })
        ));
        assert!(shifted_square_generators(0).is_err());
    }

    #[test]
    fn truncated_tail_is_redundant() {
        for a in 2..40 {
            let full = GeneratorSet::new(ShiftedSquareSequence::new(a).unwrap().terms()).unwrap();
            assert_eq!(full, shifted_square_generators(a).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn membership() {
        let s = gs(&[8, 9, 12, 17]);
        assert!(s.contains(0));
        assert!(!s.contains(31));
        assert!(s.contains(32));
        assert!(contains(&s, 33));
    }

    #[test]
    fn apery_sets() {
        assert_eq!(apery_set(&gs(&[3, 5]), 3).unwrap().elements, vec![0, 10, 5]);
        assert_eq!(apery_set(&gs(&[2, 3]), 2).unwrap().elements, vec![0, 3]);
        let ap = apery_set(&gs(&[8, 9, 12, 17]), 8).unwrap();
        assert_eq!(ap.max(), 39);
        assert_eq!(ap.frobenius(), 31);
        assert_eq!(apery_set(&gs(&[3, 5]), 8).unwrap().frobenius(), 7);
        assert!(matches!(apery_set(&gs(&[3, 5]), 7), Err(Error::Domain(_))));
        assert!(apery_set(&gs(&[3, 5]), 0).is_err());
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(frobenius_bruteforce(&gs(&[3, 5])).value, 7);
        assert_eq!(frobenius_bruteforce(&gs(&[2, 3])).value, 1);
        assert_eq!(frobenius_bruteforce(&gs(&[1])).value, -1);
        let r = frobenius_bruteforce(&shifted_square_generators(8).unwrap());
        assert_eq!(r.value, 31);
        assert_eq!(r.method, Method::Oracle);
        assert_eq!(r.apery.unwrap().modulus, 8);
    }

    #[test]
    fn sieve_oracle() {
        assert_eq!(frobenius_sieve(&[3, 5]).unwrap(), 7);
        assert_eq!(frobenius_sieve(&[1, 4]).unwrap(), -1);
        assert_eq!(frobenius_sieve(&[8, 9, 12]).unwrap(), 31);
        assert!(frobenius_sieve(&[4, 6]).is_err());
        assert!(frobenius_sieve(&[]).is_err());
    }

    #[test]
    fn gap_lists() {
        assert_eq!(gaps(&gs(&[2, 3])), vec![1]);
        assert_eq!(gaps(&gs(&[3, 5])), vec![1, 2, 4, 7]);
        assert!(gaps(&gs(&[1])).is_empty());
        assert_eq!(
            gaps(&shifted_square_generators(8).unwrap()).last(),
            Some(&31)
        );
    }

    #[test]
    fn anchors_from_independent_sieve() {
        // Values frozen from a vectorised dense sieve over all a + i², i <= M.
        for (a, f) in [
            (2, 1),
            (8, 31),
            (12, 43),
            (16, 63),
            (20, 75),
            (24, 95),
            (28, 107),
            (33, 122),
            (116, 460),
            (244, 971),
        ] {
            assert_eq!(
                shifted_square_generators(a).unwrap().frobenius(),
                f,
                "a = {a}"
            );
        }
    }
}

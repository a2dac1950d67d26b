//! Shared inputs for the benchmarks.

/// Shifts `a = 0 (mod 4)` in `from..=to`.
pub fn multiples_of_four(from: u64, to: u64) -> Vec<u64> {
    (from..=to).filter(|a| a % 4 == 0).collect()
}

//! Range verification.
//!
//! For every shift `a` in a range, evaluate the closed form (when `4 | a`),
//! the max-r characterization and optionally the Apéry oracle, and record
//! whether they agree. Shifts are independent, so they are evaluated in
//! parallel on the ambient rayon pool; results are collected in ascending
//! order, which keeps reports identical across thread counts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{frobenius_closed_form, max_r, Branch};
use crate::semigroup::{shifted_square_generators_capped, DEFAULT_SHIFT_CAP};

/// Shifts at or below this are outside the conjectured range and never
/// count as mismatches.
pub const SMALL_SHIFT_LIMIT: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub from: u64,
    pub to: u64,
    pub step: u64,
    pub with_oracle: bool,
    /// Residues mod 8 to keep; `None` keeps all.
    pub modulus_filter: Option<BTreeSet<u8>>,
    /// Largest shift the oracle may be asked for.
    pub oracle_cap: u64,
}

impl ScanConfig {
    pub fn new(from: u64, to: u64) -> Self {
        Self {
            from,
            to,
            step: 1,
            with_oracle: false,
            modulus_filter: None,
            oracle_cap: DEFAULT_SHIFT_CAP,
        }
    }

    pub fn step(mut self, step: u64) -> Self {
        self.step = step;
        self
    }

    pub fn with_oracle(mut self, on: bool) -> Self {
        self.with_oracle = on;
        self
    }

    pub fn residues(mut self, residues: impl IntoIterator<Item = u8>) -> Self {
        self.modulus_filter = Some(residues.into_iter().collect());
        self
    }

    pub fn oracle_cap(mut self, cap: u64) -> Self {
        self.oracle_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.from < 2 || self.from > self.to {
            return Err(Error::domain(format!(
                "scan range must satisfy 2 <= from <= to; got from = {}, to = {}",
                self.from, self.to
            )));
        }
        if self.step == 0 {
            return Err(Error::domain("scan step must be positive"));
        }
        if let Some(bad) = self.modulus_filter.iter().flatten().find(|&&r| r >= 8) {
            return Err(Error::domain(format!(
                "residue filter entry {bad} is not in 0..8"
            )));
        }
        if self.with_oracle && self.to > self.oracle_cap {
            return Err(Error::Capacity {
                what: "oracle shift a",
                value: self.to,
                cap: self.oracle_cap,
            });
        }
        Ok(())
    }

    /// The shifts this configuration selects, ascending.
    pub fn shifts(&self) -> Vec<u64> {
        let step = self.step as usize;
        (self.from..=self.to)
            .step_by(step)
            .filter(|a| {
                self.modulus_filter
                    .as_ref()
                    .is_none_or(|f| f.contains(&((a % 8) as u8)))
            })
            .collect()
    }
}

/// One row of a scan. Field names double as CSV headers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub a: u64,
    #[serde(rename = "mod8")]
    pub residue_mod_8: u8,
    pub closed_form: Option<i64>,
    pub branch: Option<Branch>,
    /// `3a + max_r(a)`.
    pub max_r_value: Option<i64>,
    pub witness_r: Option<u64>,
    pub oracle_value: Option<i64>,
    pub agree_formula_theorem: Option<bool>,
    pub agree_theorem_oracle: Option<bool>,
    pub hypothesis_holds: bool,
}

impl ScanRecord {
    fn evaluate(a: u64, with_oracle: bool, oracle_cap: u64) -> Result<Self> {
        let (closed_form, branch) = if a % 4 == 0 && a >= 8 {
            let r = frobenius_closed_form(a)?;
            (Some(r.value), r.branch)
        } else {
            (None, None)
        };
        let witness_r = max_r(a)?;
        let max_r_value = witness_r.map(|r| 3 * a as i64 + r as i64);
        let oracle_value = if with_oracle {
            Some(shifted_square_generators_capped(a, oracle_cap)?.frobenius())
        } else {
            None
        };
        let agree = |x: Option<i64>, y: Option<i64>| x.zip(y).map(|(x, y)| x == y);
        Ok(Self {
            a,
            residue_mod_8: (a % 8) as u8,
            closed_form,
            branch,
            max_r_value,
            witness_r,
            oracle_value,
            agree_formula_theorem: agree(closed_form, max_r_value),
            agree_theorem_oracle: agree(max_r_value, oracle_value),
            hypothesis_holds: witness_r.is_some(),
        })
    }

    /// Any disagreement or a missing admissible `r`, regardless of `a`.
    pub fn is_anomalous(&self) -> bool {
        self.agree_formula_theorem == Some(false)
            || self.agree_theorem_oracle == Some(false)
            || !self.hypothesis_holds
    }

    pub fn is_mismatch(&self) -> bool {
        self.a > SMALL_SHIFT_LIMIT && self.is_anomalous()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub records: Vec<ScanRecord>,
    pub mismatches: Vec<ScanRecord>,
    /// Anomalous shifts at or below [`SMALL_SHIFT_LIMIT`], reported only.
    pub small_shift_anomalies: Vec<u64>,
}

pub const CSV_HEADER: [&str; 10] = [
    "a",
    "mod8",
    "closed_form",
    "branch",
    "max_r_value",
    "witness_r",
    "oracle_value",
    "agree_formula_theorem",
    "agree_theorem_oracle",
    "hypothesis_holds",
];

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(out, self)
    }
}

pub fn scan_range(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let records = config
        .shifts()
        .into_par_iter()
        .map(|a| ScanRecord::evaluate(a, config.with_oracle, config.oracle_cap))
        .collect::<Result<Vec<_>>>()?;
    let mismatches = records
        .iter()
        .filter(|r| r.is_mismatch())
        .cloned()
        .collect();
    let small_shift_anomalies = records
        .iter()
        .filter(|r| r.a <= SMALL_SHIFT_LIMIT && r.is_anomalous())
        .map(|r| r.a)
        .collect();
    Ok(ScanReport {
        config: config.clone(),
        records,
        mismatches,
        small_shift_anomalies,
    })
}

/// Distribution of `a - max_r(a)` for one residue class mod 8.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueProfile {
    pub residue: u8,
    /// `residue + 1`: the offset that makes `a - offset ≡ 7 (mod 8)`.
    pub typical_offset: u64,
    /// offset -> number of shifts.
    pub histogram: BTreeMap<u64, u64>,
    /// Shifts whose offset differs from `typical_offset`, with that offset
    /// (`None` when no admissible `r` exists).
    pub exceptions: Vec<(u64, Option<u64>)>,
}

impl ResidueProfile {
    pub fn count(&self) -> u64 {
        self.histogram.values().sum::<u64>() + self.missing()
    }

    pub fn missing(&self) -> u64 {
        self.exceptions.iter().filter(|(_, o)| o.is_none()).count() as u64
    }
}

pub fn empirical_max_r_profile(from: u64, to: u64) -> Result<Vec<ResidueProfile>> {
    if from < 2 || from > to {
        return Err(Error::domain(format!(
            "profile range must satisfy 2 <= from <= to; got from = {from}, to = {to}"
        )));
    }
    let offsets = (from..=to)
        .into_par_iter()
        .map(|a| Ok((a, max_r(a)?.map(|r| a - r))))
        .collect::<Result<Vec<_>>>()?;

    let mut profiles: Vec<ResidueProfile> = (0..8u8)
        .map(|residue| ResidueProfile {
            residue,
            typical_offset: residue as u64 + 1,
            histogram: BTreeMap::new(),
            exceptions: Vec::new(),
        })
        .collect();
    for (a, offset) in offsets {
        let p = &mut profiles[(a % 8) as usize];
        if let Some(o) = offset {
            *p.histogram.entry(o).or_default() += 1;
        }
        if offset != Some(p.typical_offset) {
            p.exceptions.push((a, offset));
        }
    }
    Ok(profiles)
}

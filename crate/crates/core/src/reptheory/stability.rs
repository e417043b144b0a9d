use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::character::{decompose, Decomposition};
use super::partition::{unpad, Partition};
use crate::fistab::{FiError, FiModule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    /// Padded multiplicities constant on `[n0, n_max]`, a window of at least two rows.
    StabilizedWithinRange {
        n0: usize,
    },
    NotStabilizedInRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub n: usize,
    pub dim: usize,
    /// Multiplicity of `V_{(n-|λ̄|, λ̄)}`, keyed by `λ̄`.
    pub padded: BTreeMap<Partition, u64>,
}

impl StabilityRow {
    pub fn from_decomposition(dim: usize, d: &Decomposition) -> Self {
        Self {
            n: d.n as usize,
            dim,
            padded: d.multiplicities.iter().map(|(l, m)| (unpad(l), *m)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub model: String,
    pub mode: String,
    pub degree: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub rows: Vec<StabilityRow>,
    pub verdict: Verdict,
    /// `(m, H_k(m) generated from below)`.
    pub generation: Vec<(usize, bool)>,
}

/// Least `n0` with constant padded multiplicities on `[n0, n_max]`; needs two rows.
pub fn verdict(rows: &[StabilityRow]) -> Verdict {
    let Some(last) = rows.last() else {
        return Verdict::NotStabilizedInRange;
    };
    let mut start = rows.len() - 1;
    while start > 0 && rows[start - 1].padded == last.padded {
        start -= 1;
    }
    if start + 1 < rows.len() {
        Verdict::StabilizedWithinRange { n0: rows[start].n }
    } else {
        Verdict::NotStabilizedInRange
    }
}

pub fn generation_check(
    fi: &FiModule<'_>,
    k: u32,
    range: RangeInclusive<usize>,
) -> Result<Vec<(usize, bool)>, FiError> {
    let first = *range.start();
    range
        .map(|m| Ok((m, m > first && fi.generated_from_below(m, k)?)))
        .collect()
}

pub fn stability_report(
    fi: &FiModule<'_>,
    model: &str,
    k: u32,
    range: RangeInclusive<usize>,
) -> Result<StabilityReport, FiError> {
    let mut rows = Vec::new();
    for n in range.clone() {
        let dim = fi.homology(n, k)?.dim();
        let d = decompose(&fi.character(n, k)?)?;
        debug_assert_eq!(d.total_dim(), dim as u64);
        rows.push(StabilityRow::from_decomposition(dim, &d));
    }
    Ok(StabilityReport {
        model: model.to_string(),
        mode: fi.mode().name().to_string(),
        degree: k,
        n_min: *range.start(),
        n_max: *range.end(),
        verdict: verdict(&rows),
        generation: generation_check(fi, k, range.clone())?,
        rows,
    })
}

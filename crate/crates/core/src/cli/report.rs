use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::job::Format;
use crate::reptheory::{Partition, StabilityReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub partition: Partition,
    pub padded: Partition,
    pub multiplicity: u64,
}

/// One `(n, k)` cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub n: usize,
    pub k: u32,
    pub slice_dim: usize,
    pub dim: usize,
    /// `(cycle type, χ)`, partitions in reverse-lexicographic order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<(Partition, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompositionEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub cell: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub model: String,
    pub model_sha256: String,
    pub mode: String,
    pub k_range: [usize; 2],
    pub n_range: [usize; 2],
    pub seed: u64,
    pub cells: Vec<CellReport>,
    pub checks: Vec<CheckRecord>,
    pub stability: Vec<StabilityReport>,
    pub all_checks_passed: bool,
}

impl Report {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Table => table(report).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> serde_json::Result<Report> {
    serde_json::from_slice(bytes)
}

fn table(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model {} (sha256 {})",
        r.model,
        &r.model_sha256[..16.min(r.model_sha256.len())]
    );
    let _ = writeln!(
        out,
        "mode {}  k {}..{}  n {}..{}  engine {}  schema {}",
        r.mode, r.k_range[0], r.k_range[1], r.n_range[0], r.n_range[1], r.engine_version, r.schema_version
    );
    let mut ks: Vec<u32> = r.cells.iter().map(|c| c.k).collect();
    ks.dedup();
    for k in ks {
        let cells: Vec<&CellReport> = r.cells.iter().filter(|c| c.k == k).collect();
        let mut columns: Vec<Partition> = cells
            .iter()
            .flat_map(|c| c.decomposition.iter().flatten().map(|e| e.padded.clone()))
            .collect();
        columns.sort();
        columns.dedup();
        let mut header = vec!["n".to_string()];
        header.extend(columns.iter().map(|p| p.to_string()));
        header.push("dim".into());
        let mut rows = vec![header];
        for c in &cells {
            let mut row = vec![c.n.to_string()];
            for p in &columns {
                let m = c
                    .decomposition
                    .iter()
                    .flatten()
                    .find(|e| &e.padded == p)
                    .map_or(0, |e| e.multiplicity);
                row.push(m.to_string());
            }
            row.push(c.dim.to_string());
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let _ = writeln!(out, "\nk = {k}");
        for row in rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            let _ = writeln!(out, "  {}", line.join("  "));
        }
        if let Some(s) = r.stability.iter().find(|s| s.degree == k) {
            let _ = writeln!(out, "  stability: {}", verdict_text(s));
            if !s.generation.is_empty() {
                let flags: Vec<String> = s
                    .generation
                    .iter()
                    .map(|(m, g)| format!("{m}:{}", if *g { "yes" } else { "no" }))
                    .collect();
                let _ = writeln!(out, "  generated from below: {}", flags.join(" "));
            }
        }
    }
    if !r.checks.is_empty() {
        let _ = writeln!(out, "\nchecks");
        for c in &r.checks {
            let _ = writeln!(
                out,
                "  {:<20} {:<16} {}",
                c.check,
                c.cell,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
    }
    out
}

fn verdict_text(s: &StabilityReport) -> String {
    match s.verdict {
        crate::reptheory::Verdict::StabilizedWithinRange { n0 } => {
            format!("constant for n in {n0}..{} (within computed range)", s.n_max)
        }
        crate::reptheory::Verdict::NotStabilizedInRange => "not stabilized in range".into(),
    }
}

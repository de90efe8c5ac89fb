//! Per-surface systole and filling measurements, emitted as CSV or JSON.
//!
//! Output carries no timings, so it is byte-identical for a fixed corpus,
//! seed and version regardless of thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::surgery::fill;
use crate::systole::{homological_systole, homotopy_systole, SystoleError};

use super::corpus::CorpusEntry;

pub const SCHEMA: &str = "systolica/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also run the filling pipeline on every row.
    pub fill: bool,
    pub seed: u64,
    pub version: String,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fill: true,
            seed: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub name: String,
    pub family: Option<String>,
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    pub genus: Option<usize>,
    pub sys: Option<usize>,
    pub hsys: Option<usize>,
    /// `Sys / √F`.
    pub ratio1: Option<f64>,
    /// `SysH · √g / (ln g · √F)`, for genus at least 2.
    pub ratio2: Option<f64>,
    pub cut_lengths: Option<Vec<usize>>,
    pub fill_tets: Option<usize>,
    pub fill_ratio: Option<f64>,
    pub fill_log_ratio: Option<f64>,
    pub status: RowStatus,
    pub message: Option<String>,
}

impl VerificationRow {
    pub fn is_ok(&self) -> bool {
        self.status == RowStatus::Ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySummary {
    pub family: String,
    pub rows: usize,
    pub min_ratio1: f64,
    pub max_ratio1: f64,
    /// `max / min` of `ratio1` across the family.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub rows: usize,
    pub failed: usize,
    pub sup_ratio1: Option<f64>,
    pub sup_ratio2: Option<f64>,
    pub sup_fill_ratio: Option<f64>,
    pub sup_fill_log_ratio: Option<f64>,
    pub families: Vec<FamilySummary>,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub version: String,
    pub seed: u64,
    pub rows: Vec<VerificationRow>,
    pub summary: VerificationSummary,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "name",
            "family",
            "V",
            "E",
            "F",
            "genus",
            "sys",
            "hsys",
            "ratio1",
            "ratio2",
            "cut_lengths",
            "fill_tets",
            "fill_ratio",
            "fill_log_ratio",
            "status",
            "message",
        ])
        .expect("writing to memory");
        let na = || "N/A".to_string();
        let num = |x: Option<usize>| x.map_or_else(na, |v| v.to_string());
        let real = |x: Option<f64>| x.map_or_else(na, |v| v.to_string());
        for r in &self.rows {
            let cuts = r.cut_lengths.as_ref().map_or_else(na, |c| {
                c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            });
            w.write_record([
                r.name.clone(),
                r.family.clone().unwrap_or_default(),
                r.vertices.to_string(),
                r.edges.to_string(),
                r.facets.to_string(),
                num(r.genus),
                num(r.sys),
                num(r.hsys),
                real(r.ratio1),
                real(r.ratio2),
                cuts,
                num(r.fill_tets),
                real(r.fill_ratio),
                real(r.fill_log_ratio),
                match r.status {
                    RowStatus::Ok => "ok".to_string(),
                    RowStatus::Failed => "failed".to_string(),
                },
                r.message.clone().unwrap_or_default(),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV output is UTF-8")
    }
}

/// Measures every entry, in parallel, keeping input order.
///
/// A failing row is marked and the run continues.
pub fn verify_corpus(entries: &[CorpusEntry], options: &VerifyOptions) -> VerificationReport {
    let rows: Vec<VerificationRow> = entries
        .par_iter()
        .map(|e| verify_entry(e, options))
        .collect();
    let summary = summarize(&rows);
    VerificationReport {
        schema: SCHEMA,
        version: options.version.clone(),
        seed: options.seed,
        rows,
        summary,
    }
}

fn verify_entry(entry: &CorpusEntry, options: &VerifyOptions) -> VerificationRow {
    let s = &entry.surface;
    let inv = s.topology_invariants();
    let mut row = VerificationRow {
        name: entry.name.clone(),
        family: entry.family.clone(),
        vertices: inv.vertices,
        edges: inv.edges,
        facets: inv.facets,
        genus: inv.genus,
        sys: None,
        hsys: None,
        ratio1: None,
        ratio2: None,
        cut_lengths: None,
        fill_tets: None,
        fill_ratio: None,
        fill_log_ratio: None,
        status: RowStatus::Ok,
        message: None,
    };
    if let Err(message) = measure(entry, options, &mut row) {
        row.status = RowStatus::Failed;
        row.message = Some(message);
    }
    row
}

fn measure(
    entry: &CorpusEntry,
    options: &VerifyOptions,
    row: &mut VerificationRow,
) -> Result<(), String> {
    let s = &entry.surface;
    if !s.is_closed() {
        return Err("surface is not closed".into());
    }
    let genus = row.genus.ok_or("surface is not orientable")?;
    let f = s.triangle_count() as f64;
    if genus >= 1 {
        let sys = homotopy_systole(s).map_err(|e| e.to_string())?;
        let hsys = homological_systole(s).map_err(|e| e.to_string())?;
        for found in [&sys, &hsys] {
            found.cycle.validate(s).map_err(|e| e.to_string())?;
            if !found.cycle.is_simple() {
                return Err(SystoleError::NotSimple.to_string());
            }
        }
        row.sys = Some(sys.length);
        row.hsys = Some(hsys.length);
        if sys.length > hsys.length {
            return Err(format!(
                "Sys = {} exceeds SysH = {}",
                sys.length, hsys.length
            ));
        }
        let ratio1 = sys.length as f64 / f.sqrt();
        row.ratio1 = Some(ratio1);
        if genus >= 2 {
            let g = genus as f64;
            row.ratio2 = Some(hsys.length as f64 * g.sqrt() / (g.ln() * f.sqrt()));
        }
    }
    if options.fill {
        let (_, report) = fill(s).map_err(|e| e.to_string())?;
        if report.tets != report.predicted_tets() {
            return Err(format!(
                "filling has {} tetrahedra, expected {}",
                report.tets,
                report.predicted_tets()
            ));
        }
        row.cut_lengths = Some(report.cut_lengths.clone());
        row.fill_tets = Some(report.tets);
        row.fill_ratio = Some(report.ratio);
        row.fill_log_ratio = Some(report.log_ratio);
    }
    let finite = [row.ratio1, row.ratio2, row.fill_ratio, row.fill_log_ratio]
        .into_iter()
        .flatten()
        .all(f64::is_finite);
    if !finite {
        return Err("a ratio is not finite".into());
    }
    Ok(())
}

fn sup(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    values.flatten().reduce(f64::max)
}

fn summarize(rows: &[VerificationRow]) -> VerificationSummary {
    let ok = || rows.iter().filter(|r| r.is_ok());
    let mut by_family: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in ok() {
        if let (Some(family), Some(ratio)) = (&r.family, r.ratio1) {
            by_family.entry(family).or_default().push(ratio);
        }
    }
    let families = by_family
        .into_iter()
        .map(|(family, ratios)| {
            let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            FamilySummary {
                family: family.to_string(),
                rows: ratios.len(),
                min_ratio1: min,
                max_ratio1: max,
                spread: max / min,
            }
        })
        .collect();
    VerificationSummary {
        rows: rows.len(),
        failed: rows.iter().filter(|r| !r.is_ok()).count(),
        sup_ratio1: sup(ok().map(|r| r.ratio1)),
        sup_ratio2: sup(ok().map(|r| r.ratio2)),
        sup_fill_ratio: sup(ok().map(|r| r.fill_ratio)),
        sup_fill_log_ratio: sup(ok().map(|r| r.fill_log_ratio)),
        families,
        note: "constants are measured suprema over this corpus, not theoretical bounds",
    }
}

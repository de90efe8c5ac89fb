//! Corpus generators, surface files, and the verification suite.

pub mod corpus;
pub mod generate;
pub mod io;
pub mod verify;

pub use corpus::{default_corpus, CorpusEntry};
pub use generate::{GenerateError, Generator};
pub use io::{parse_surface, write_surface, Format, IoError};
pub use verify::{verify_corpus, VerificationReport, VerificationRow, VerifyOptions, SCHEMA};

use serde::Serialize;

use crate::complex::TriangulatedSurface;
use crate::surgery::{fill, FillingReport, SurgeryError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRow {
    pub stage: usize,
    pub genus: usize,
    pub facets: usize,
    /// Length of the loop cut at this stage; `None` for the final sphere.
    pub cut_length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillSummary {
    pub schema: &'static str,
    pub input_facets: usize,
    pub stages: Vec<StageRow>,
    pub ball_tets: usize,
    pub tets: usize,
    pub predicted_tets: usize,
    pub identity_holds: bool,
    pub ratio: f64,
    pub log_ratio: f64,
    pub elapsed_seconds: f64,
}

impl FillSummary {
    pub fn from_report(report: &FillingReport) -> Self {
        let stages = report
            .stage_facets
            .iter()
            .enumerate()
            .map(|(i, &facets)| StageRow {
                stage: i,
                genus: report.genus_sequence[i],
                facets,
                cut_length: report.cut_lengths.get(i).copied(),
            })
            .collect();
        FillSummary {
            schema: SCHEMA,
            input_facets: report.input_facets(),
            stages,
            ball_tets: report.ball_tets,
            tets: report.tets,
            predicted_tets: report.predicted_tets(),
            identity_holds: report.tets == report.predicted_tets(),
            ratio: report.ratio,
            log_ratio: report.log_ratio,
            elapsed_seconds: report.elapsed_seconds,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("summary serializes");
        text.push('\n');
        text
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("stage  genus  facets  cut\n");
        for s in &self.stages {
            let cut = s.cut_length.map_or("-".to_string(), |l| l.to_string());
            out.push_str(&format!(
                "{:>5}  {:>5}  {:>6}  {cut}\n",
                s.stage, s.genus, s.facets
            ));
        }
        out.push_str(&format!(
            "ball tets {}\ntets {} (4(F + 2Σℓ) = {})\nratio {:.6}\nratio / ln²F {:.6}\n",
            self.ball_tets, self.tets, self.predicted_tets, self.ratio, self.log_ratio
        ));
        out
    }
}

/// Runs the filling pipeline and summarizes it stage by stage.
pub fn fill_report(s: &TriangulatedSurface) -> Result<(FillingReport, FillSummary), SurgeryError> {
    let (_, report) = fill(s)?;
    let summary = FillSummary::from_report(&report);
    Ok((report, summary))
}

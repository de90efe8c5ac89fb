use std::time::Instant;

use crate::complex::TriangulatedSurface;

use super::ball::cone_ball;
use super::glue::{glue_back, Filling3Complex};
use super::stage::{cut_and_cone_step, CutRecord};
use super::SurgeryError;

/// Stage-by-stage bookkeeping of one filling run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FillingReport {
    /// Genus before each stage, ending with the sphere's 0.
    pub genus_sequence: Vec<usize>,
    pub cut_lengths: Vec<usize>,
    /// Triangle count of each intermediate surface, starting with the input.
    pub stage_facets: Vec<usize>,
    pub ball_tets: usize,
    pub tets: usize,
    /// `tets / F` for the input triangle count `F`.
    pub ratio: f64,
    /// `tets / (F ln² F)`; undefined for `F = 1`, which never occurs.
    pub log_ratio: f64,
    pub records: Vec<CutRecord>,
    pub elapsed_seconds: f64,
}

impl FillingReport {
    pub fn input_facets(&self) -> usize {
        self.stage_facets[0]
    }

    /// `4 (F + 2 Σ ℓ)`, which the tetrahedron count must equal.
    pub fn predicted_tets(&self) -> usize {
        4 * (self.input_facets() + 2 * self.cut_lengths.iter().sum::<usize>())
    }
}

/// Fills a closed orientable surface by a triangulated 3-manifold: cut and
/// cone until a sphere remains, fill the sphere by the coned prism ball,
/// then glue the cuts back in reverse order.
///
/// Every count identity of the construction is checked and a mismatch is an
/// [`SurgeryError::Invariant`].
pub fn fill(s: &TriangulatedSurface) -> Result<(Filling3Complex, FillingReport), SurgeryError> {
    let started = Instant::now();
    if !s.is_closed() {
        return Err(SurgeryError::NotClosed);
    }
    let genus = s.genus().ok_or(SurgeryError::NotOrientable)?;

    let mut genus_sequence = vec![genus];
    let mut stage_facets = vec![s.triangle_count()];
    let mut cut_lengths = Vec::with_capacity(genus);
    let mut records = Vec::with_capacity(genus);
    let mut current = s.clone();
    for stage in 0..genus {
        let (next, record) = cut_and_cone_step(&current, stage)?;
        let len = record.loop_length();
        if next.triangle_count() != current.triangle_count() + 2 * len {
            return Err(SurgeryError::Invariant(format!(
                "stage {stage}: {} triangles after coning a loop of length {len} on {}",
                next.triangle_count(),
                current.triangle_count()
            )));
        }
        genus_sequence.push(genus - stage - 1);
        stage_facets.push(next.triangle_count());
        cut_lengths.push(len);
        records.push(record);
        current = next;
    }
    if current.euler_characteristic() != 2 {
        return Err(SurgeryError::Invariant(format!(
            "final surface has χ = {}",
            current.euler_characteristic()
        )));
    }

    let ball = cone_ball(&current)?;
    let ball_tets = ball.complex().tet_count();
    if ball_tets != 4 * current.triangle_count() {
        return Err(SurgeryError::Invariant(format!(
            "ball has {ball_tets} tetrahedra over {} triangles",
            current.triangle_count()
        )));
    }
    let filling = glue_back(ball, &records)?;
    check_filling(s, &filling, genus)?;

    let tets = filling.complex().tet_count();
    let f = s.triangle_count() as f64;
    let report = FillingReport {
        genus_sequence,
        cut_lengths,
        stage_facets,
        ball_tets,
        tets,
        ratio: tets as f64 / f,
        log_ratio: tets as f64 / (f * f.ln().powi(2)),
        records,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    };
    if tets != report.predicted_tets() {
        return Err(SurgeryError::Invariant(format!(
            "{tets} tetrahedra, expected {}",
            report.predicted_tets()
        )));
    }
    Ok((filling, report))
}

fn check_filling(
    s: &TriangulatedSurface,
    filling: &Filling3Complex,
    genus: usize,
) -> Result<(), SurgeryError> {
    let identity: Vec<usize> = (0..s.vertex_count()).collect();
    if filling.boundary_map() != identity.as_slice() || !filling.boundary_matches(s)? {
        return Err(SurgeryError::Invariant(
            "filling boundary is not the input surface".into(),
        ));
    }
    let complex = filling.complex();
    complex
        .check_manifold()
        .map_err(|e| SurgeryError::Invariant(format!("filling is not a manifold: {e}")))?;
    let chi = complex.euler_characteristic();
    if chi != 1 - genus as i64 {
        return Err(SurgeryError::Invariant(format!(
            "filling of a genus-{genus} surface has χ = {chi}"
        )));
    }
    Ok(())
}

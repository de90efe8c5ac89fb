use crate::complex::{EdgeLoop, Triangle, TriangulatedSurface};
use crate::systole;

use super::cut::{split_along, SplitOutcome};
use super::SurgeryError;

/// A cut that has not been coned yet.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PendingCut {
    pub stage: usize,
    pub cycle: EdgeLoop,
    /// The loop's vertices on the first side; these keep their ids.
    pub copy_a: Vec<usize>,
    /// The duplicated vertices on the second side, `copy_b[i]` pairing `copy_a[i]`.
    pub copy_b: Vec<usize>,
}

/// Everything needed to undo one cut-and-cone stage.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CutRecord {
    pub stage: usize,
    pub cycle: EdgeLoop,
    pub copy_a: Vec<usize>,
    pub copy_b: Vec<usize>,
    pub apex_a: usize,
    pub apex_b: usize,
    /// Triangle ids of the cone over `copy_a` in the coned surface.
    pub cone_a: Vec<usize>,
    pub cone_b: Vec<usize>,
}

impl CutRecord {
    pub fn loop_length(&self) -> usize {
        self.copy_a.len()
    }

    /// Vertex triples of the two cone disks.
    pub fn cone_triangles(&self) -> (Vec<Triangle>, Vec<Triangle>) {
        let fan = |copy: &[usize], apex: usize| -> Vec<Triangle> {
            let n = copy.len();
            (0..n).map(|i| [apex, copy[i], copy[(i + 1) % n]]).collect()
        };
        (
            fan(&self.copy_a, self.apex_a),
            fan(&self.copy_b, self.apex_b),
        )
    }
}

/// Cuts a closed orientable surface along a simple nonseparating loop.
///
/// The result has `V + ℓ` vertices, the same triangles (in the same order)
/// and two boundary circles of length `ℓ`.
pub fn cut_along(
    s: &TriangulatedSurface,
    p: &EdgeLoop,
) -> Result<(TriangulatedSurface, PendingCut), SurgeryError> {
    if !s.is_closed() {
        return Err(SurgeryError::NotClosed);
    }
    if !s.is_orientable() {
        return Err(SurgeryError::NotOrientable);
    }
    let split = match split_along(s, p)? {
        SplitOutcome::OneSided => return Err(SurgeryError::OneSidedLoop),
        SplitOutcome::TwoSided(split) => split,
    };
    if split.components != 1 {
        return Err(SurgeryError::SeparatingLoop);
    }
    let cut = TriangulatedSurface::new(split.vertex_count, split.triangles, true)?;
    let lengths: Vec<usize> = cut
        .boundary_components()
        .iter()
        .map(EdgeLoop::len)
        .collect();
    if lengths != [p.len(), p.len()] {
        return Err(SurgeryError::BadBoundary {
            expected: p.len(),
            found: lengths,
        });
    }
    Ok((
        cut,
        PendingCut {
            stage: 0,
            cycle: p.clone(),
            copy_a: split.copy_a,
            copy_b: split.copy_b,
        },
    ))
}

/// Cones each boundary circle of a cut surface to a new apex vertex,
/// adding exactly `2ℓ` triangles.
pub fn cone_boundaries(
    cut: &TriangulatedSurface,
    pending: PendingCut,
) -> Result<(TriangulatedSurface, CutRecord), SurgeryError> {
    let len = pending.copy_a.len();
    let lengths: Vec<usize> = cut
        .boundary_components()
        .iter()
        .map(EdgeLoop::len)
        .collect();
    if lengths != [len, len] {
        return Err(SurgeryError::BadBoundary {
            expected: len,
            found: lengths,
        });
    }
    let apex_a = cut.vertex_count();
    let apex_b = apex_a + 1;
    let mut triangles = cut.triangles().to_vec();
    let mut cone = |copy: &[usize], apex: usize| -> Result<Vec<usize>, SurgeryError> {
        let mut ids = Vec::with_capacity(len);
        for i in 0..len {
            let (x, y) = (copy[i], copy[(i + 1) % len]);
            let e = cut
                .edge_between(x, y)
                .filter(|&e| cut.is_boundary_edge(e))
                .ok_or_else(|| {
                    SurgeryError::Invariant(format!("({x}, {y}) is not a boundary edge"))
                })?;
            let inside = cut.triangle(cut.edge_triangles(e)[0]);
            let forward = (0..3).any(|k| inside[k] == x && inside[(k + 1) % 3] == y);
            ids.push(triangles.len());
            triangles.push(if forward { [y, x, apex] } else { [x, y, apex] });
        }
        Ok(ids)
    };
    let cone_a = cone(&pending.copy_a, apex_a)?;
    let cone_b = cone(&pending.copy_b, apex_b)?;
    let coned = TriangulatedSurface::new(apex_b + 1, triangles, false)
        .map_err(SurgeryError::ConingCollision)?;
    Ok((
        coned,
        CutRecord {
            stage: pending.stage,
            cycle: pending.cycle,
            copy_a: pending.copy_a,
            copy_b: pending.copy_b,
            apex_a,
            apex_b,
            cone_a,
            cone_b,
        },
    ))
}

/// One genus-reducing stage along the homological systole loop.
pub fn cut_and_cone_step(
    s: &TriangulatedSurface,
    stage: usize,
) -> Result<(TriangulatedSurface, CutRecord), SurgeryError> {
    let genus = s.genus().ok_or(if s.is_closed() {
        SurgeryError::NotOrientable
    } else {
        SurgeryError::NotClosed
    })?;
    if genus == 0 {
        return Err(SurgeryError::GenusZero);
    }
    let systole = systole::homological_systole(s)?;
    let (cut, mut pending) = cut_along(s, &systole.cycle)?;
    pending.stage = stage;
    let (next, record) = cone_boundaries(&cut, pending)?;
    if next.genus() != Some(genus - 1) {
        return Err(SurgeryError::Invariant(format!(
            "stage {stage}: genus went from {genus} to {:?}",
            next.genus()
        )));
    }
    Ok((next, record))
}

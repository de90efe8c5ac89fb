use crate::complex::{EdgeLoop, TriangulatedSurface};

use super::cut::{split_along, SplitOutcome};
use super::SurgeryError;

/// Cuts along `p` and reglues with `copy_a[i]` identified to
/// `copy_b[(i + offset) mod ℓ]`.
///
/// The two boundary circles carry the same cyclic direction, so the rotated
/// regluing stays orientable and keeps `V`, `E`, `F` and `χ`. Offset `0`
/// gives back `S` itself.
pub fn dehn_twist(
    s: &TriangulatedSurface,
    p: &EdgeLoop,
    offset: usize,
) -> Result<TriangulatedSurface, SurgeryError> {
    if !s.is_closed() {
        return Err(SurgeryError::NotClosed);
    }
    if !s.is_orientable() {
        return Err(SurgeryError::NotOrientable);
    }
    let len = p.len();
    if offset >= len {
        return Err(SurgeryError::InvalidOffset {
            offset,
            length: len,
        });
    }
    let split = match split_along(s, p)? {
        SplitOutcome::OneSided => return Err(SurgeryError::OneSidedLoop),
        SplitOutcome::TwoSided(split) => split,
    };
    if split.components != 1 {
        return Err(SurgeryError::SeparatingLoop);
    }
    let v = s.vertex_count();
    let mut target: Vec<usize> = (0..split.vertex_count).collect();
    for i in 0..len {
        // copy_b[j] pairs with copy_a[j - offset].
        target[split.copy_b[(i + offset) % len]] = split.copy_a[i];
    }
    let triangles = split
        .triangles
        .iter()
        .map(|t| t.map(|x| target[x]))
        .collect();
    let twisted = TriangulatedSurface::new(v, triangles, false).map_err(|e| {
        SurgeryError::SimplicialityViolation {
            stage: 0,
            detail: format!("regluing with offset {offset}: {e}"),
        }
    })?;
    let before = s.topology_invariants();
    let after = twisted.topology_invariants();
    if before != after {
        return Err(SurgeryError::Invariant(format!(
            "twist changed invariants from {before:?} to {after:?}"
        )));
    }
    Ok(twisted)
}

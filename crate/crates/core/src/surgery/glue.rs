use crate::complex::{sorted3, TetrahedralComplex, Tetrahedron, Triangle, TriangulatedSurface};

use super::stage::CutRecord;
use super::SurgeryError;

/// A tetrahedral complex together with the vertex correspondence onto the
/// surface it fills.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling3Complex {
    complex: TetrahedralComplex,
    boundary_map: Vec<usize>,
}

impl Filling3Complex {
    pub(crate) fn new(complex: TetrahedralComplex, boundary_map: Vec<usize>) -> Self {
        Filling3Complex {
            complex,
            boundary_map,
        }
    }

    pub fn complex(&self) -> &TetrahedralComplex {
        &self.complex
    }

    pub fn into_complex(self) -> TetrahedralComplex {
        self.complex
    }

    /// Complex vertex id of each surface vertex.
    pub fn boundary_map(&self) -> &[usize] {
        &self.boundary_map
    }

    /// Whether the boundary triangles are exactly `s` under the vertex map.
    pub fn boundary_matches(&self, s: &TriangulatedSurface) -> Result<bool, SurgeryError> {
        if self.boundary_map.len() != s.vertex_count() {
            return Ok(false);
        }
        let mut expected: Vec<Triangle> = s
            .triangles()
            .iter()
            .map(|t| sorted3(t.map(|v| self.boundary_map[v])))
            .collect();
        expected.sort_unstable();
        Ok(expected == self.complex.boundary_triangles())
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Counts {
    vertices: usize,
    edges: usize,
    faces: usize,
    tets: usize,
}

fn counts(complex: &TetrahedralComplex) -> Counts {
    let mut vertices: Vec<usize> = complex.tetrahedra().iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges = Vec::with_capacity(complex.tet_count() * 6);
    for t in complex.tetrahedra() {
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((t[i].min(t[j]), t[i].max(t[j])));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Counts {
        vertices: vertices.len(),
        edges: edges.len(),
        faces: complex.face_multiplicities().count(),
        tets: complex.tet_count(),
    }
}

/// Undoes the cuts, last cut first, by identifying `copy_b[i]` with
/// `copy_a[i]` and `apex_b` with `apex_a`.
///
/// Each identification must glue exactly the two cone disks and nothing
/// else: vertices drop by `ℓ + 1`, edges by `2ℓ`, triangles by `ℓ`, and the
/// tetrahedron count is unchanged. Anything more means two distinct
/// simplices were merged, which is reported instead of repaired.
pub fn glue_back(
    ball: Filling3Complex,
    records: &[CutRecord],
) -> Result<Filling3Complex, SurgeryError> {
    let mut current = ball;
    for record in records.iter().rev() {
        current = glue_one(current, record)?;
    }
    Ok(compact(current))
}

fn glue_one(current: Filling3Complex, record: &CutRecord) -> Result<Filling3Complex, SurgeryError> {
    let stage = record.stage;
    let len = record.loop_length();
    let boundary = current.complex.boundary_triangles();
    let (disk_a, disk_b) = record.cone_triangles();
    for t in disk_a.iter().chain(&disk_b) {
        if boundary.binary_search(&sorted3(*t)).is_err() {
            return Err(SurgeryError::MissingDisk { stage });
        }
    }
    let genus_before = current.complex.boundary()?.surface.genus();

    let vertex_count = current.complex.vertex_count();
    let mut target: Vec<usize> = (0..vertex_count).collect();
    for (&a, &b) in record.copy_a.iter().zip(&record.copy_b) {
        target[b] = a;
    }
    target[record.apex_b] = record.apex_a;
    let tets: Vec<Tetrahedron> = current
        .complex
        .tetrahedra()
        .iter()
        .map(|t| t.map(|v| target[v]))
        .collect();

    let before = counts(&current.complex);
    let glued = TetrahedralComplex::new(vertex_count, tets).map_err(|e| {
        SurgeryError::SimplicialityViolation {
            stage,
            detail: format!("identification breaks the complex: {e}"),
        }
    })?;
    let after = counts(&glued);
    let expected = Counts {
        vertices: before.vertices - (len + 1),
        edges: before.edges - 2 * len,
        faces: before.faces - len,
        tets: before.tets,
    };
    if after != expected {
        return Err(SurgeryError::SimplicialityViolation {
            stage,
            detail: format!(
                "identification merged extra simplices: expected {expected:?}, got {after:?}"
            ),
        });
    }
    let genus_after = glued.boundary()?.surface.genus();
    if genus_before.map(|g| g + 1) != genus_after {
        return Err(SurgeryError::Invariant(format!(
            "stage {stage}: boundary genus went from {genus_before:?} to {genus_after:?}"
        )));
    }
    Ok(Filling3Complex {
        complex: glued,
        boundary_map: (0..record.copy_b[0]).collect(),
    })
}

/// Renumbers the used vertices densely, preserving order.
fn compact(filling: Filling3Complex) -> Filling3Complex {
    let complex = &filling.complex;
    let mut used = vec![false; complex.vertex_count()];
    for t in complex.tetrahedra() {
        for &v in t {
            used[v] = true;
        }
    }
    let mut new_id = vec![usize::MAX; used.len()];
    let mut next = 0;
    for (v, &u) in used.iter().enumerate() {
        if u {
            new_id[v] = next;
            next += 1;
        }
    }
    let tets = complex
        .tetrahedra()
        .iter()
        .map(|t| t.map(|v| new_id[v]))
        .collect();
    let complex = TetrahedralComplex::new(next, tets).expect("renumbering preserves validity");
    let boundary_map = filling.boundary_map.iter().map(|&v| new_id[v]).collect();
    Filling3Complex {
        complex,
        boundary_map,
    }
}

//! Tetrahedral 3-complexes whose boundary is a closed surface.

use super::surface::{sorted3, SurfaceError, Triangle, TriangulatedSurface};

pub type Tetrahedron = [usize; 4];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TetError {
    #[error("tetrahedron list is empty")]
    Empty,
    #[error(
        "tetrahedron {tet} references vertex {vertex}, but the vertex count is {vertex_count}"
    )]
    VertexOutOfRange {
        tet: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("tetrahedron {0} repeats a vertex")]
    DegenerateTet(usize),
    #[error("tetrahedra {first} and {second} have the same vertex set")]
    DuplicateTet { first: usize, second: usize },
    #[error("triangle {face:?} lies in {count} tetrahedra")]
    OverfullTriangle { face: Triangle, count: usize },
    #[error("boundary is not a closed surface: {0}")]
    BadBoundary(SurfaceError),
    #[error("link of vertex {0} is neither a sphere nor a disk")]
    BadVertexLink(usize),
}

/// The boundary of a complex, relabelled onto dense ids.
#[derive(Debug, Clone)]
pub struct BoundarySurface {
    pub surface: TriangulatedSurface,
    /// Complex vertex id of each boundary-surface vertex.
    pub to_complex: Vec<usize>,
}

/// A pure 3-dimensional simplicial complex.
///
/// Every triangle lies in one or two tetrahedra, and the triangles lying in
/// exactly one form a closed connected surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetrahedralComplex {
    vertex_count: usize,
    tets: Vec<Tetrahedron>,
    /// Sorted face triples with the tetrahedra containing them.
    faces: Vec<(Triangle, [usize; 2])>,
}

const NONE: usize = usize::MAX;

impl TetrahedralComplex {
    pub fn new(vertex_count: usize, tets: Vec<Tetrahedron>) -> Result<Self, TetError> {
        let faces = face_table(vertex_count, &tets)?;
        let complex = TetrahedralComplex {
            vertex_count,
            tets,
            faces,
        };
        complex.boundary()?;
        Ok(complex)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tetrahedra(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    /// Every triangle face with the number of tetrahedra containing it.
    pub fn face_multiplicities(&self) -> impl Iterator<Item = (Triangle, usize)> + '_ {
        self.faces
            .iter()
            .map(|(f, ts)| (*f, if ts[1] == NONE { 1 } else { 2 }))
    }

    pub fn boundary_triangles(&self) -> Vec<Triangle> {
        self.faces
            .iter()
            .filter(|(_, ts)| ts[1] == NONE)
            .map(|(f, _)| *f)
            .collect()
    }

    pub fn boundary(&self) -> Result<BoundarySurface, TetError> {
        let triangles = self.boundary_triangles();
        let mut used: Vec<usize> = triangles.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let mut local = vec![NONE; self.vertex_count];
        for (i, &v) in used.iter().enumerate() {
            local[v] = i;
        }
        let relabelled = triangles
            .iter()
            .map(|t| [local[t[0]], local[t[1]], local[t[2]]])
            .collect();
        let surface = TriangulatedSurface::new(used.len(), relabelled, false)
            .map_err(TetError::BadBoundary)?;
        Ok(BoundarySurface {
            surface,
            to_complex: used,
        })
    }

    /// `V - E + F - T` over the simplices actually used.
    pub fn euler_characteristic(&self) -> i64 {
        let mut vertices: Vec<usize> = self.tets.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<[usize; 2]> = Vec::with_capacity(self.tets.len() * 6);
        for t in &self.tets {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push([t[i].min(t[j]), t[i].max(t[j])]);
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        vertices.len() as i64 - edges.len() as i64 + self.faces.len() as i64
            - self.tets.len() as i64
    }

    /// Checks that every vertex link is a 2-sphere (interior vertices) or a
    /// disk (boundary vertices), i.e. that the complex is a 3-manifold.
    pub fn check_manifold(&self) -> Result<(), TetError> {
        let mut links: Vec<Vec<Triangle>> = vec![Vec::new(); self.vertex_count];
        for t in &self.tets {
            for i in 0..4 {
                let opposite = [t[(i + 1) % 4], t[(i + 2) % 4], t[(i + 3) % 4]];
                links[t[i]].push(opposite);
            }
        }
        let mut on_boundary = vec![false; self.vertex_count];
        for f in self.boundary_triangles() {
            for v in f {
                on_boundary[v] = true;
            }
        }
        let mut local = vec![NONE; self.vertex_count];
        for (v, link) in links.iter().enumerate() {
            if link.is_empty() {
                continue;
            }
            let mut used: Vec<usize> = link.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            for (i, &w) in used.iter().enumerate() {
                local[w] = i;
            }
            let relabelled = link
                .iter()
                .map(|t| [local[t[0]], local[t[1]], local[t[2]]])
                .collect();
            let surface = TriangulatedSurface::new(used.len(), relabelled, true)
                .map_err(|_| TetError::BadVertexLink(v))?;
            let chi = surface.euler_characteristic();
            let holes = surface.boundary_components().len();
            let ok = if on_boundary[v] {
                chi == 1 && holes == 1
            } else {
                chi == 2 && holes == 0
            };
            if !ok {
                return Err(TetError::BadVertexLink(v));
            }
        }
        Ok(())
    }
}

/// Validates tetrahedra and tabulates their faces; used by both the
/// complex constructor and shell checks that allow disconnected boundary.
pub(crate) fn face_table(
    vertex_count: usize,
    tets: &[Tetrahedron],
) -> Result<Vec<(Triangle, [usize; 2])>, TetError> {
    if tets.is_empty() {
        return Err(TetError::Empty);
    }
    let mut keyed = Vec::with_capacity(tets.len());
    for (i, t) in tets.iter().enumerate() {
        for &v in t {
            if v >= vertex_count {
                return Err(TetError::VertexOutOfRange {
                    tet: i,
                    vertex: v,
                    vertex_count,
                });
            }
        }
        let mut key = *t;
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(TetError::DegenerateTet(i));
        }
        keyed.push((key, i));
    }
    keyed.sort_unstable();
    if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(TetError::DuplicateTet {
            first: w[0].1,
            second: w[1].1,
        });
    }
    let mut sides: Vec<(Triangle, usize)> = Vec::with_capacity(tets.len() * 4);
    for (i, t) in tets.iter().enumerate() {
        for skip in 0..4 {
            let face: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| t[k]).collect();
            sides.push((sorted3([face[0], face[1], face[2]]), i));
        }
    }
    sides.sort_unstable();
    let mut faces = Vec::new();
    let mut i = 0;
    while i < sides.len() {
        let mut j = i;
        while j < sides.len() && sides[j].0 == sides[i].0 {
            j += 1;
        }
        if j - i > 2 {
            return Err(TetError::OverfullTriangle {
                face: sides[i].0,
                count: j - i,
            });
        }
        let second = if j - i == 2 { sides[i + 1].1 } else { NONE };
        faces.push((sides[i].0, [sides[i].1, second]));
        i = j;
    }
    Ok(faces)
}

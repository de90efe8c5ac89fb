//! Validated triangulated surfaces, tetrahedral complexes and edge loops.

mod edge_loop;
mod surface;
mod tetra;
pub(crate) mod union_find;

pub use edge_loop::{EdgeLoop, LoopError};
pub(crate) use surface::sorted3;
pub use surface::{SurfaceError, TopologyInvariants, Triangle, TriangulatedSurface};
#[cfg(test)]
pub(crate) use tetra::face_table;
pub use tetra::{BoundarySurface, TetError, TetrahedralComplex, Tetrahedron};

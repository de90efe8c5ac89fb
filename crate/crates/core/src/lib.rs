//! Discrete systoles of triangulated surfaces, cut-and-cone fillings by
//! triangulated 3-manifolds, and simplex fullness.
//!
//! The crate is organised as:
//!
//! - [`complex`]: validated surfaces, edge loops and tetrahedral complexes;
//! - [`systole`]: Z2 homology and exact shortest nontrivial loops;
//! - [`surgery`]: cutting, coning, the prism ball, glue-back and twists;
//! - [`geometry`]: Euclidean simplex volume, fullness and related bounds;
//! - [`metric`]: the equilateral metric and projection to the 1-skeleton;
//! - [`harness`]: generators, file formats and the verification suite.

pub mod complex;
pub mod geometry;
pub mod gf2;
pub mod harness;
pub mod metric;
pub mod surgery;
pub mod systole;

pub use complex::{
    EdgeLoop, SurfaceError, TetError, TetrahedralComplex, Tetrahedron, TopologyInvariants,
    Triangle, TriangulatedSurface,
};
pub use geometry::{EuclideanSimplex, GeometryError};
pub use gf2::Gf2Vector;
pub use harness::{CorpusEntry, GenerateError, Generator, IoError, VerificationRow};
pub use metric::{MetricError, PolygonalPath, StraighteningResult};
pub use surgery::{CutRecord, Filling3Complex, FillingReport, SurgeryError};
pub use systole::{Systole, SystoleError, Z2HomologyBasis};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Tet(#[from] TetError),
    #[error(transparent)]
    Systole(#[from] SystoleError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Io(#[from] IoError),
}

//! The equilateral metric on a triangulated surface, where every triangle
//! is a regular triangle of area 1, and the projection of polygonal paths
//! onto the 1-skeleton.

mod path;
mod random;
mod straighten;

pub use path::{
    chart_point, e2, parse_path_block, path_length_gs, support, Barycentric, PathSpec,
    PolygonalPath, Segment, BARYCENTRIC_TOLERANCE,
};
pub use random::random_closed_path;
pub use straighten::{
    project_to_skeleton, radial_straighten, BoundaryArc, StraighteningResult, BARYCENTRE_NUDGE,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("path has no segments")]
    EmptyPath,
    #[error("segment {segment}: triangle {triangle} does not exist")]
    BadTriangle { segment: usize, triangle: usize },
    #[error("segment {segment}: barycentric coordinates must be non-negative and sum to 1")]
    BadBarycentric { segment: usize },
    #[error("segment {segment} does not end where the next one starts")]
    Discontinuous { segment: usize },
    #[error("chord endpoint is not on the triangle boundary")]
    NotOnBoundary,
    #[error("chord passes through the barycentre and could not be perturbed off it")]
    ThroughBarycenter,
    #[error("path must be closed")]
    NotClosed,
    #[error("straightened loop has a different Z2 class from the input")]
    SignatureMismatch,
    #[error("straightened path has a different support from the input")]
    SupportMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Side length of the regular `n`-simplex of unit volume,
/// `(n! 2^{n/2} / √(n+1))^{1/n}`.
pub fn equilateral_edge_length(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    let n_fact: f64 = (1..=n).map(|i| i as f64).product();
    let nf = n as f64;
    (n_fact * 2f64.powf(nf / 2.0) / (nf + 1.0).sqrt()).powf(1.0 / nf)
}

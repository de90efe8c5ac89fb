//! Shared fixtures for the benchmarks.

use systolica::harness::generate::{genus_polygon, subdivide, torus_sum};
use systolica::TriangulatedSurface;

/// Surfaces of increasing size used across benchmarks, labelled by
/// triangle count.
pub fn fixtures() -> Vec<(String, TriangulatedSurface)> {
    let mut out = Vec::new();
    for s in [
        torus_sum(2).expect("torus_sum(2)"),
        torus_sum(4).expect("torus_sum(4)"),
        subdivide(&subdivide(&torus_sum(2).expect("torus_sum(2)"))),
        genus_polygon(2, 2).expect("genus_polygon(2, 2)"),
    ] {
        out.push((format!("F{}", s.triangle_count()), s));
    }
    out
}

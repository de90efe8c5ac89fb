//! Euclidean simplices: volume, diameter, fullness and the fullness
//! inequalities, barycentric cube subdivision, perturbation robustness and
//! subspace independence.

mod bounds;
mod cube;
mod independence;
mod perturb;
mod simplex;

pub use bounds::{
    boundary_distance_bound_check, face_fullness_check, BoundaryDistanceCheck, FaceCheck,
    BOUND_TOLERANCE,
};
pub use cube::cube_barycentric_subdivision;
pub use independence::independence;
pub use perturb::perturbed_min_fullness;
pub use simplex::{
    fullness, gram_volume, simplex_diameter, simplex_volume, EuclideanSimplex, DEGENERACY_THRESHOLD,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad barycentric coordinates: {0}")]
    BadBarycentric(String),
    #[error("bad basis: {0}")]
    BadBasis(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Parses one or more `SIMPLEX m k` blocks, each followed by `k + 1` lines
/// of `m` coordinates. Blank lines and `#` comments are skipped.
pub fn parse_simplex_blocks(text: &str) -> Result<Vec<EuclideanSimplex>, GeometryError> {
    let err = |line: usize, message: String| GeometryError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut out = Vec::new();
    while let Some((line, header)) = lines.next() {
        let mut last = line;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "SIMPLEX" {
            return Err(err(line, "expected 'SIMPLEX <m> <k>'".into()));
        }
        let m: usize = fields[1]
            .parse()
            .map_err(|_| err(line, format!("'{}' is not a dimension", fields[1])))?;
        let k: usize = fields[2]
            .parse()
            .map_err(|_| err(line, format!("'{}' is not a dimension", fields[2])))?;
        let mut points = Vec::with_capacity(k + 1);
        for _ in 0..=k {
            let (line, content) = lines
                .next()
                .ok_or_else(|| err(last + 1, format!("expected {} points", k + 1)))?;
            last = line;
            let coords: Result<Vec<f64>, _> = content.split_whitespace().map(str::parse).collect();
            let coords =
                coords.map_err(|_| err(line, "coordinates must be decimal numbers".into()))?;
            if coords.len() != m {
                return Err(err(
                    line,
                    format!("expected {m} coordinates, got {}", coords.len()),
                ));
            }
            points.push(coords);
        }
        out.push(EuclideanSimplex::new(points).map_err(|e| err(last, e.to_string()))?);
    }
    if out.is_empty() {
        return Err(err(1, "no SIMPLEX block found".into()));
    }
    Ok(out)
}

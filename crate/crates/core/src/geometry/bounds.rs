use super::simplex::{distance_to_simplex, fullness, simplex_diameter, EuclideanSimplex};
use super::GeometryError;

/// Slack allowed in the inequality checks, relative to the diameter.
pub const BOUND_TOLERANCE: f64 = 1e-9;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// One instance of `r! Θ(σʳ) ≤ k! Θ(σᵏ)` for a face `σᵏ` of `σʳ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCheck {
    pub face: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Checks the face fullness inequality for every proper face of dimension
/// at least 1.
pub fn face_fullness_check(s: &EuclideanSimplex) -> Result<Vec<FaceCheck>, GeometryError> {
    let r = s.dimension();
    let lhs = factorial(r) * fullness(s)?;
    let n = r + 1;
    let mut checks = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let face: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if face.len() < 2 {
            continue;
        }
        let k = face.len() - 1;
        let rhs = factorial(k) * fullness(&s.face(&face)?)?;
        checks.push(FaceCheck {
            holds: lhs <= rhs * (1.0 + BOUND_TOLERANCE),
            face,
            lhs,
            rhs,
        });
    }
    Ok(checks)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryDistanceCheck {
    /// Distance from the point to the boundary of the simplex.
    pub lhs: f64,
    /// `r! Θ(σ) diam(σ) min μ`.
    pub rhs: f64,
    pub holds: bool,
}

pub(crate) fn validate_barycentric(s: &EuclideanSimplex, mu: &[f64]) -> Result<(), GeometryError> {
    if mu.len() != s.dimension() + 1 {
        return Err(GeometryError::BadBarycentric(format!(
            "expected {} coordinates, got {}",
            s.dimension() + 1,
            mu.len()
        )));
    }
    if mu.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(GeometryError::BadBarycentric(
            "coordinates must be finite and non-negative".into(),
        ));
    }
    let sum: f64 = mu.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(GeometryError::BadBarycentric(format!(
            "coordinates sum to {sum}, not 1"
        )));
    }
    Ok(())
}

/// Compares the distance from the `μ`-point to `∂σ` with
/// `r! Θ(σ) diam(σ) min μ`.
///
/// The distance is the minimum over facets of the distance to the closed
/// facet, computed by projecting and recursing into sub-faces when the
/// projection falls outside.
pub fn boundary_distance_bound_check(
    s: &EuclideanSimplex,
    mu: &[f64],
) -> Result<BoundaryDistanceCheck, GeometryError> {
    validate_barycentric(s, mu)?;
    let r = s.dimension();
    let p = s.point_at(mu);
    let pts = s.points();
    let lhs = (0..pts.len())
        .map(|skip| {
            let facet: Vec<Vec<f64>> = pts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, x)| x.clone())
                .collect();
            distance_to_simplex(&facet, &p)
        })
        .fold(f64::INFINITY, f64::min);
    let diam = simplex_diameter(s);
    let min_mu = mu.iter().copied().fold(f64::INFINITY, f64::min);
    let rhs = factorial(r) * fullness(s)? * diam * min_mu;
    Ok(BoundaryDistanceCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - BOUND_TOLERANCE * diam,
    })
}

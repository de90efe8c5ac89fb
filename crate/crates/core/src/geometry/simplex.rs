use nalgebra::{DMatrix, DVector};

use super::GeometryError;

/// Simplices whose Gram determinant falls below this fraction of
/// `diam^{2k}` are rejected as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-24;

/// A non-degenerate `k`-simplex given by `k + 1` points in `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanSimplex {
    points: Vec<Vec<f64>>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `EᵀE` for the edge vectors `E` from the first point.
fn gram(points: &[Vec<f64>]) -> DMatrix<f64> {
    let k = points.len() - 1;
    let p0 = &points[0];
    DMatrix::from_fn(k, k, |i, j| {
        points[i + 1]
            .iter()
            .zip(&points[j + 1])
            .zip(p0)
            .map(|((a, b), o)| (a - o) * (b - o))
            .sum()
    })
}

fn diameter_of(points: &[Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(dist2(&points[i], &points[j]));
        }
    }
    best.sqrt()
}

impl EuclideanSimplex {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        let ambient = points.first().map(Vec::len).ok_or_else(|| {
            GeometryError::BadDimension("a simplex needs at least one point".into())
        })?;
        if ambient == 0 {
            return Err(GeometryError::BadDimension(
                "ambient dimension must be positive".into(),
            ));
        }
        if points.iter().any(|p| p.len() != ambient) {
            return Err(GeometryError::BadDimension(
                "all points must have the same dimension".into(),
            ));
        }
        if points.len() > ambient + 1 {
            return Err(GeometryError::DegenerateSimplex);
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeometryError::BadDimension(
                "coordinates must be finite".into(),
            ));
        }
        let k = points.len() - 1;
        if k > 0 {
            let diam = diameter_of(&points);
            let det = gram(&points).determinant();
            if diam == 0.0 || det.is_nan() || det < DEGENERACY_THRESHOLD * diam.powi(2 * k as i32) {
                return Err(GeometryError::DegenerateSimplex);
            }
        }
        Ok(EuclideanSimplex { points })
    }

    pub fn ambient_dimension(&self) -> usize {
        self.points[0].len()
    }

    /// The simplex dimension `k`.
    pub fn dimension(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// The sub-simplex on the given vertex indices.
    pub fn face(&self, indices: &[usize]) -> Result<EuclideanSimplex, GeometryError> {
        if indices.iter().any(|&i| i >= self.points.len()) {
            return Err(GeometryError::BadDimension(
                "face index out of range".into(),
            ));
        }
        EuclideanSimplex::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    pub fn scaled(&self, t: f64) -> Result<EuclideanSimplex, GeometryError> {
        EuclideanSimplex::new(
            self.points
                .iter()
                .map(|p| p.iter().map(|x| x * t).collect())
                .collect(),
        )
    }

    /// The point with barycentric coordinates `mu`, which must be valid.
    pub fn point_at(&self, mu: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient_dimension()];
        for (p, &w) in self.points.iter().zip(mu) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        out
    }
}

/// Longest edge length; 0 for a single point.
pub fn simplex_diameter(s: &EuclideanSimplex) -> f64 {
    diameter_of(&s.points)
}

/// `k`-volume from the Cayley–Menger determinant:
/// `(-1)^{k+1} 2^k (k!)² V² = det CM`.
pub fn simplex_volume(s: &EuclideanSimplex) -> Result<f64, GeometryError> {
    let n = s.points.len();
    let k = n - 1;
    if k == 0 {
        return Ok(1.0);
    }
    // Scale to unit diameter for conditioning, then rescale.
    let diam = simplex_diameter(s);
    let cm = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => 0.0,
        (0, _) | (_, 0) => 1.0,
        _ => dist2(&s.points[i - 1], &s.points[j - 1]) / (diam * diam),
    });
    let det = cm.determinant();
    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
    let v2 = sign * det / (2f64.powi(k as i32) * factorial(k).powi(2));
    if v2.is_nan() || v2 <= 0.0 {
        return Err(GeometryError::DegenerateSimplex);
    }
    Ok(v2.sqrt() * diam.powi(k as i32))
}

/// `k`-volume as `√det(EᵀE) / k!`.
pub fn gram_volume(s: &EuclideanSimplex) -> Result<f64, GeometryError> {
    let k = s.dimension();
    if k == 0 {
        return Ok(1.0);
    }
    let det = gram(&s.points).determinant();
    if det.is_nan() || det <= 0.0 {
        return Err(GeometryError::DegenerateSimplex);
    }
    Ok(det.sqrt() / factorial(k))
}

/// `Θ = Vol_k / diam^k`.
pub fn fullness(s: &EuclideanSimplex) -> Result<f64, GeometryError> {
    let k = s.dimension();
    if k == 0 {
        return Err(GeometryError::DegenerateSimplex);
    }
    Ok(simplex_volume(s)? / simplex_diameter(s).powi(k as i32))
}

/// Orthogonal projection of `p` onto the affine hull of `points`, returned
/// as barycentric coordinates.
pub(crate) fn affine_projection(points: &[Vec<f64>], p: &[f64]) -> Option<Vec<f64>> {
    let k = points.len() - 1;
    if k == 0 {
        return Some(vec![1.0]);
    }
    let p0 = &points[0];
    let rhs = DVector::from_fn(k, |i, _| {
        points[i + 1]
            .iter()
            .zip(p)
            .zip(p0)
            .map(|((a, x), o)| (a - o) * (x - o))
            .sum()
    });
    let lambda = gram(points).lu().solve(&rhs)?;
    let mut mu = Vec::with_capacity(k + 1);
    mu.push(1.0 - lambda.sum());
    mu.extend(lambda.iter());
    Some(mu)
}

/// Euclidean distance from `p` to the closed simplex on `points`.
pub(crate) fn distance_to_simplex(points: &[Vec<f64>], p: &[f64]) -> f64 {
    if points.len() == 1 {
        return dist2(&points[0], p).sqrt();
    }
    if let Some(mu) = affine_projection(points, p) {
        if mu.iter().all(|&w| w >= 0.0) {
            let mut q = vec![0.0; p.len()];
            for (pt, &w) in points.iter().zip(&mu) {
                for (o, x) in q.iter_mut().zip(pt) {
                    *o += w * x;
                }
            }
            return dist2(&q, p).sqrt();
        }
    }
    (0..points.len())
        .map(|skip| {
            let facet: Vec<Vec<f64>> = points
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, x)| x.clone())
                .collect();
            distance_to_simplex(&facet, p)
        })
        .fold(f64::INFINITY, f64::min)
}

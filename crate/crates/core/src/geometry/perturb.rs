use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::simplex::{fullness, simplex_diameter, EuclideanSimplex};
use super::GeometryError;

/// Minimum fullness over `trials` random perturbations of `σ`, each vertex
/// moved uniformly within a ball of radius `ρ · diam(σ)`.
///
/// A perturbation that degenerates the simplex counts as fullness 0. With
/// `ρ = 0` or no trials the result is `Θ(σ)`.
pub fn perturbed_min_fullness(
    s: &EuclideanSimplex,
    rho: f64,
    trials: usize,
    seed: u64,
) -> Result<f64, GeometryError> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(GeometryError::BadDimension(format!(
            "perturbation radius must be non-negative, got {rho}"
        )));
    }
    let base = fullness(s)?;
    if rho == 0.0 {
        return Ok(base);
    }
    let m = s.ambient_dimension();
    let radius = rho * simplex_diameter(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = base;
    for _ in 0..trials {
        let moved: Vec<Vec<f64>> = s
            .points()
            .iter()
            .map(|p| {
                let dir: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
                let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
                let r = radius * rng.gen::<f64>().powf(1.0 / m as f64);
                p.iter()
                    .zip(&dir)
                    .map(|(x, d)| if norm > 0.0 { x + r * d / norm } else { *x })
                    .collect()
            })
            .collect();
        let theta = EuclideanSimplex::new(moved)
            .and_then(|t| fullness(&t))
            .unwrap_or(0.0);
        best = best.min(theta);
    }
    Ok(best)
}

use super::simplex::EuclideanSimplex;
use super::GeometryError;

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Barycentric subdivision of the cube `[0, h]^m` into `2^m m!` simplices.
///
/// Every simplex is a flag centre ⊂ facet ⊂ … ⊂ corner: for a permutation
/// `π` and signs `s`, vertex `j` is `c + (h/2) Σ_{i<j} s_{π(i)} e_{π(i)}`.
/// Each has volume `h^m / (2^m m!)` and diameter `h √m / 2`, the
/// centre-to-corner edge.
pub fn cube_barycentric_subdivision(
    m: usize,
    h: f64,
) -> Result<Vec<EuclideanSimplex>, GeometryError> {
    if !(1..=5).contains(&m) {
        return Err(GeometryError::BadDimension(format!(
            "cube dimension must be 1 to 5, got {m}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::BadDimension(format!(
            "side length must be positive, got {h}"
        )));
    }
    let half = h / 2.0;
    let mut out = Vec::with_capacity((1 << m) * (1..=m).product::<usize>());
    for perm in permutations(m) {
        for signs in 0u32..(1 << m) {
            let mut point = vec![half; m];
            let mut points = Vec::with_capacity(m + 1);
            points.push(point.clone());
            for &axis in &perm {
                point[axis] += if signs & (1 << axis) != 0 {
                    half
                } else {
                    -half
                };
                points.push(point.clone());
            }
            out.push(EuclideanSimplex::new(points)?);
        }
    }
    Ok(out)
}

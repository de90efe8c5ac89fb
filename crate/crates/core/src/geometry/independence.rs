use nalgebra::DMatrix;

use super::GeometryError;

const ORTHONORMAL_TOLERANCE: f64 = 1e-9;

fn basis_matrix(basis: &[Vec<f64>], name: &str) -> Result<DMatrix<f64>, GeometryError> {
    let m = basis
        .first()
        .map(Vec::len)
        .ok_or_else(|| GeometryError::BadBasis(format!("{name} is empty")))?;
    if basis.iter().any(|v| v.len() != m) {
        return Err(GeometryError::BadBasis(format!(
            "{name} mixes vector lengths"
        )));
    }
    let q = DMatrix::from_fn(m, basis.len(), |i, j| basis[j][i]);
    let gram = q.transpose() * &q;
    let off = (&gram - DMatrix::identity(basis.len(), basis.len()))
        .abs()
        .max();
    if off.is_nan() || off > ORTHONORMAL_TOLERANCE {
        return Err(GeometryError::BadBasis(format!(
            "{name} is not orthonormal"
        )));
    }
    Ok(q)
}

/// `inf { |v − π_P v| : v ∈ P′, |v| = 1 }` for subspaces given by
/// orthonormal bases.
///
/// This is the smallest singular value of `(I − P Pᵀ) Q`, where `Q` spans
/// `P′`.
pub fn independence(p: &[Vec<f64>], p_prime: &[Vec<f64>]) -> Result<f64, GeometryError> {
    let a = basis_matrix(p, "P")?;
    let b = basis_matrix(p_prime, "P′")?;
    if a.nrows() != b.nrows() {
        return Err(GeometryError::BadBasis(
            "bases live in different ambient dimensions".into(),
        ));
    }
    let residual = &b - &a * (a.transpose() * &b);
    let sigma = residual.svd(false, false).singular_values.min();
    Ok(sigma.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn orthogonal_planes() {
        let p = vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]];
        let q = vec![vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]];
        assert_relative_eq!(independence(&p, &q).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identical_lines() {
        let l = vec![vec![0.6, 0.8]];
        assert!(independence(&l, &l).unwrap() < 1e-15);
    }

    #[test]
    fn lines_at_thirty_degrees() {
        let t = std::f64::consts::FRAC_PI_6;
        let p = vec![vec![1.0, 0.0]];
        let q = vec![vec![t.cos(), t.sin()]];
        assert_relative_eq!(independence(&p, &q).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(independence(&[], &[vec![1.0]]).is_err());
        assert!(independence(&[vec![2.0, 0.0]], &[vec![1.0, 0.0]]).is_err());
        assert!(independence(&[vec![1.0, 0.0]], &[vec![1.0, 0.0, 0.0]]).is_err());
    }
}

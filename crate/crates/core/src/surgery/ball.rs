use crate::complex::{sorted3, TetrahedralComplex, Tetrahedron, TriangulatedSurface};

use super::glue::Filling3Complex;
use super::SurgeryError;

fn require_sphere(s: &TriangulatedSurface) -> Result<(), SurgeryError> {
    if s.is_closed() && s.euler_characteristic() == 2 {
        Ok(())
    } else {
        Err(SurgeryError::NotSphere)
    }
}

/// Triangulates `S × I` with three tetrahedra per triangle.
///
/// Vertex `v` of `S` is the outer copy `S × {1}`; `V + v` is the inner copy.
/// Each triangle's vertices are taken in ascending id order `v0 < v1 < v2`,
/// giving `v0v1v2w2`, `v0v1w1w2`, `v0w0w1w2`. Every wall quadrilateral over
/// an edge `a < b` is then split by the diagonal from outer `a` to inner
/// `b`, so neighbouring prisms agree.
pub fn prism_shell(s: &TriangulatedSurface) -> Result<Vec<Tetrahedron>, SurgeryError> {
    require_sphere(s)?;
    let inner = s.vertex_count();
    let mut tets = Vec::with_capacity(3 * s.triangle_count());
    for &t in s.triangles() {
        let [v0, v1, v2] = sorted3(t);
        let [w0, w1, w2] = [v0 + inner, v1 + inner, v2 + inner];
        tets.push([v0, v1, v2, w2]);
        tets.push([v0, v1, w1, w2]);
        tets.push([v0, w0, w1, w2]);
    }
    Ok(tets)
}

/// The prism shell with its inner sphere coned to a centre vertex: a
/// triangulated 3-ball with exactly `4F` tetrahedra and boundary `S`.
pub fn cone_ball(s: &TriangulatedSurface) -> Result<Filling3Complex, SurgeryError> {
    let mut tets = prism_shell(s)?;
    let inner = s.vertex_count();
    let centre = 2 * inner;
    for &t in s.triangles() {
        let [v0, v1, v2] = sorted3(t);
        tets.push([v0 + inner, v1 + inner, v2 + inner, centre]);
    }
    let complex = TetrahedralComplex::new(centre + 1, tets).map_err(|e| {
        SurgeryError::SimplicialityViolation {
            stage: 0,
            detail: e.to_string(),
        }
    })?;
    let ball = Filling3Complex::new(complex, (0..inner).collect());
    if !ball.boundary_matches(s)? {
        return Err(SurgeryError::Invariant(
            "ball boundary differs from the sphere".into(),
        ));
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::face_table;

    fn tetra() -> TriangulatedSurface {
        TriangulatedSurface::from_triangles(vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], false)
            .unwrap()
    }

    #[test]
    fn shell_of_tetrahedron_sphere() {
        let s = tetra();
        let shell = prism_shell(&s).unwrap();
        assert_eq!(shell.len(), 12);
        // Inner and outer spheres are both boundary; all walls are shared.
        let faces = face_table(8, &shell).unwrap();
        let boundary: Vec<_> = faces.iter().filter(|(_, ts)| ts[1] == usize::MAX).collect();
        assert_eq!(boundary.len(), 8);
        for (f, _) in &boundary {
            let outer = f.iter().all(|&v| v < 4);
            let inner = f.iter().all(|&v| v >= 4);
            assert!(outer || inner, "wall triangle {f:?} left unmatched");
        }
    }

    #[test]
    fn ball_over_tetrahedron_sphere() {
        let ball = cone_ball(&tetra()).unwrap();
        assert_eq!(ball.complex().tet_count(), 16);
        assert_eq!(ball.complex().euler_characteristic(), 1);
        ball.complex().check_manifold().unwrap();
    }

    #[test]
    fn torus_is_not_a_sphere() {
        let torus = crate::harness::generate::csaszar_torus();
        assert_eq!(prism_shell(&torus), Err(SurgeryError::NotSphere));
        assert!(matches!(cone_ball(&torus), Err(SurgeryError::NotSphere)));
    }
}

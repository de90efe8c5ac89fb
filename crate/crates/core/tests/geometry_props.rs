use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use systolica::geometry::{
    boundary_distance_bound_check, cube_barycentric_subdivision, face_fullness_check, fullness,
    gram_volume, independence, parse_simplex_blocks, perturbed_min_fullness, simplex_diameter,
    simplex_volume,
};
use systolica::{EuclideanSimplex, GeometryError};

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn gaussian_points(rng: &mut ChaCha8Rng, k: usize, m: usize) -> Vec<Vec<f64>> {
    (0..=k)
        .map(|_| (0..m).map(|_| rng.sample(StandardNormal)).collect())
        .collect()
}

/// Volume by modified Gram–Schmidt on the edge vectors: the product of the
/// orthogonal residual norms over `k!`.
fn residual_volume(points: &[Vec<f64>]) -> f64 {
    let p0 = &points[0];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut product = 1.0;
    for p in &points[1..] {
        let mut v: Vec<f64> = p.iter().zip(p0).map(|(a, b)| a - b).collect();
        for q in &basis {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        product *= norm;
        basis.push(v.iter().map(|x| x / norm).collect());
    }
    product / factorial(points.len() - 1)
}

#[test]
fn volume_formulas_agree_with_residual_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=m.min(5));
        let s = EuclideanSimplex::new(gaussian_points(&mut rng, k, m)).unwrap();
        let oracle = residual_volume(s.points());
        assert_relative_eq!(simplex_volume(&s).unwrap(), oracle, max_relative = 1e-10);
        assert_relative_eq!(gram_volume(&s).unwrap(), oracle, max_relative = 1e-10);
    }
}

#[test]
fn fullness_is_scale_and_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let m = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=m.min(5));
        let s = EuclideanSimplex::new(gaussian_points(&mut rng, k, m)).unwrap();
        let theta = fullness(&s).unwrap();
        for t in [1e-3, 1.0, 1e3] {
            assert_relative_eq!(
                fullness(&s.scaled(t).unwrap()).unwrap(),
                theta,
                max_relative = 1e-10
            );
        }
        let mut pts = s.points().to_vec();
        pts.reverse();
        pts.swap(0, k.min(1));
        assert_relative_eq!(
            fullness(&EuclideanSimplex::new(pts).unwrap()).unwrap(),
            theta,
            max_relative = 1e-10
        );
    }
}

#[test]
fn regular_simplices() {
    let h = 3f64.sqrt() / 2.0;
    let tri = EuclideanSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]]).unwrap();
    assert_relative_eq!(fullness(&tri).unwrap(), 3f64.sqrt() / 4.0, epsilon = 1e-15);
    let s = 1.0 / 2f64.sqrt();
    let tet = EuclideanSimplex::new(vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 1.0, 1.0],
    ])
    .unwrap();
    assert_relative_eq!(simplex_diameter(&tet), 2f64.sqrt(), epsilon = 1e-15);
    // Edge a = √2 gives volume a³ / (6√2) = 1/3.
    assert_relative_eq!(simplex_volume(&tet).unwrap(), 1.0 / 3.0, epsilon = 1e-14);
    assert_relative_eq!(fullness(&tet).unwrap(), s / 6.0, epsilon = 1e-14);
}

#[test]
fn degenerate_simplices_are_rejected() {
    let flat = EuclideanSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]);
    assert_eq!(flat.unwrap_err(), GeometryError::DegenerateSimplex);
    assert!(EuclideanSimplex::new(vec![vec![0.0], vec![1.0], vec![2.0]]).is_err());
    assert!(EuclideanSimplex::new(vec![vec![0.0, 0.0], vec![1.0]]).is_err());
}

fn sorted_distances(s: &EuclideanSimplex) -> Vec<f64> {
    let p = s.points();
    let mut d = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            d.push(
                p[i].iter()
                    .zip(&p[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt(),
            );
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

#[test]
fn cube_subdivision_tiles_the_cube_with_congruent_pieces() {
    for (m, h) in [(2, 7.0), (3, 1.0), (4, 0.5), (5, 2.0)] {
        let pieces = cube_barycentric_subdivision(m, h).unwrap();
        assert_eq!(pieces.len(), (1 << m) * factorial(m) as usize);
        let total: f64 = pieces.iter().map(|s| simplex_volume(s).unwrap()).sum();
        assert_relative_eq!(total, h.powi(m as i32), max_relative = 1e-10);
        let expected = 1.0 / (factorial(m) * (m as f64).powf(m as f64 / 2.0));
        let first = sorted_distances(&pieces[0]);
        for s in &pieces {
            assert_relative_eq!(fullness(s).unwrap(), expected, max_relative = 1e-10);
            assert_relative_eq!(
                simplex_diameter(s),
                h * (m as f64).sqrt() / 2.0,
                max_relative = 1e-12
            );
            for (a, b) in sorted_distances(s).iter().zip(&first) {
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
            assert!(s.points().iter().flatten().all(|&x| (0.0..=h).contains(&x)));
        }
    }
}

#[test]
fn small_perturbations_keep_most_of_the_fullness() {
    let cube = cube_barycentric_subdivision(3, 1.0).unwrap();
    let tri = EuclideanSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.8]]).unwrap();
    let tet = EuclideanSimplex::new(vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 1.0, 1.0],
    ])
    .unwrap();
    let cases = [cube[0].clone(), tri, tet];
    for (i, s) in cases.iter().enumerate() {
        let theta = fullness(s).unwrap();
        let got = perturbed_min_fullness(s, 0.01, 1000, i as u64).unwrap();
        assert!(got <= theta && got >= 0.9 * theta, "{got} vs {theta}");
    }
}

#[test]
fn fullness_inequalities_on_random_simplices() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let m = rng.gen_range(2..=5);
        let r = rng.gen_range(2..=m);
        let s = EuclideanSimplex::new(gaussian_points(&mut rng, r, m)).unwrap();
        assert!(face_fullness_check(&s).unwrap().iter().all(|c| c.holds));
        let mu: Vec<f64> = (0..=r).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let sum: f64 = mu.iter().sum();
        let mu: Vec<f64> = mu.iter().map(|x| x / sum).collect();
        assert!(boundary_distance_bound_check(&s, &mu).unwrap().holds);
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]))
        .clamp(0.0, 1.0);
    ((p[0] - a[0] - t * d[0]).powi(2) + (p[1] - a[1] - t * d[1]).powi(2)).sqrt()
}

#[test]
fn boundary_distance_matches_planar_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..10_000 {
        let pts = gaussian_points(&mut rng, 2, 2);
        let Ok(s) = EuclideanSimplex::new(pts.clone()) else {
            continue;
        };
        let mu: Vec<f64> = (0..3).map(|_| rng.gen::<f64>()).collect();
        let sum: f64 = mu.iter().sum();
        let mu: Vec<f64> = mu.iter().map(|x| x / sum).collect();
        let c = boundary_distance_bound_check(&s, &mu).unwrap();
        let v: Vec<[f64; 2]> = pts.iter().map(|p| [p[0], p[1]]).collect();
        let x = s.point_at(&mu);
        let x = [x[0], x[1]];
        let oracle = (0..3)
            .map(|i| segment_distance(x, v[i], v[(i + 1) % 3]))
            .fold(f64::INFINITY, f64::min);
        assert!((c.lhs - oracle).abs() <= 1e-9 * simplex_diameter(&s));
        assert!(c.holds);
    }
}

fn orthonormal(rng: &mut ChaCha8Rng, m: usize, d: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut v: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        for _ in 0..2 {
            for q in &basis {
                let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= dot * y;
                }
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    basis
}

/// Minimises `|v − π_P v|` over a fine grid of the unit circle of a 2-plane
/// `P′`, then refines around the best angle.
fn circle_minimum(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    let residual = |theta: f64| {
        let v: Vec<f64> = (0..q[0].len())
            .map(|i| theta.cos() * q[0][i] + theta.sin() * q[1][i])
            .collect();
        let mut r = v.clone();
        for b in p {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in r.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
        r.iter().map(|x| x * x).sum::<f64>().sqrt()
    };
    let n = 20_000;
    let step = std::f64::consts::PI / n as f64;
    let mut best = (0..n)
        .map(|i| i as f64 * step)
        .min_by(|&a, &b| residual(a).total_cmp(&residual(b)))
        .unwrap();
    let mut width = step;
    for _ in 0..60 {
        let (l, r) = (best - width / 3.0, best + width / 3.0);
        if residual(l) < residual(best) {
            best = l;
        } else if residual(r) < residual(best) {
            best = r;
        } else {
            width /= 2.0;
        }
    }
    residual(best)
}

#[test]
fn independence_matches_circle_minimisation() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..50 {
        let m = rng.gen_range(3..=6);
        let d = rng.gen_range(1..m - 1);
        let p = orthonormal(&mut rng, m, d);
        let q = orthonormal(&mut rng, m, 2);
        let got = independence(&p, &q).unwrap();
        assert!((got - circle_minimum(&p, &q)).abs() < 1e-9, "m = {m}");
    }
}

#[test]
fn independence_of_lines_at_thirty_degrees() {
    let t = std::f64::consts::FRAC_PI_6;
    let p = vec![vec![1.0, 0.0, 0.0]];
    let q = vec![vec![t.cos(), t.sin(), 0.0]];
    assert_relative_eq!(independence(&p, &q).unwrap(), 0.5, epsilon = 1e-15);
    assert_relative_eq!(independence(&q, &p).unwrap(), 0.5, epsilon = 1e-15);
}

#[test]
fn independence_is_symmetric_for_equal_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let m = rng.gen_range(2..=7);
        let d = rng.gen_range(1..=m / 2);
        let p = orthonormal(&mut rng, m, d);
        let q = orthonormal(&mut rng, m, d);
        assert_relative_eq!(
            independence(&p, &q).unwrap(),
            independence(&q, &p).unwrap(),
            epsilon = 1e-10
        );
    }
    // A plane contains a line, but not the other way round.
    let plane = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    let line = vec![vec![1.0, 0.0, 0.0]];
    assert!(independence(&plane, &line).unwrap() < 1e-15);
    assert_relative_eq!(independence(&line, &plane).unwrap(), 0.0, epsilon = 1e-15);
    let z = vec![vec![0.0, 0.0, 1.0]];
    assert_relative_eq!(independence(&plane, &z).unwrap(), 1.0, epsilon = 1e-15);
}

#[test]
fn parses_simplex_blocks() {
    let text = "# two simplices\nSIMPLEX 2 2\n0 0\n1 0\n0 1\n\nSIMPLEX 3 1\n0 0 0\n1 1 1\n";
    let got = parse_simplex_blocks(text).unwrap();
    assert_eq!(got.len(), 2);
    assert_relative_eq!(simplex_volume(&got[0]).unwrap(), 0.5, epsilon = 1e-15);
    assert_relative_eq!(
        simplex_volume(&got[1]).unwrap(),
        3f64.sqrt(),
        epsilon = 1e-15
    );
    let line_of = |text: &str| match parse_simplex_blocks(text) {
        Err(GeometryError::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    };
    assert_eq!(line_of("SIMPLEX 2\n"), 1);
    assert_eq!(line_of("SIMPLEX 2 2\n0 0\n1 x\n0 1\n"), 3);
    assert_eq!(line_of("SIMPLEX 2 2\n0 0\n1 0\n"), 4);
    assert_eq!(line_of("SIMPLEX 2 2\n0 0\n1 0\n2 0\n"), 4);
    assert_eq!(line_of(""), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn face_inequality_holds(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(2..=m);
        let s = EuclideanSimplex::new(gaussian_points(&mut rng, r, m)).unwrap();
        for c in face_fullness_check(&s).unwrap() {
            prop_assert!(c.holds, "face {:?}: {} > {}", c.face, c.lhs, c.rhs);
        }
    }

    #[test]
    fn fullness_is_at_most_the_regular_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = EuclideanSimplex::new(gaussian_points(&mut rng, 2, 2)).unwrap();
        prop_assert!(fullness(&s).unwrap() <= 3f64.sqrt() / 4.0 + 1e-12);
    }
}

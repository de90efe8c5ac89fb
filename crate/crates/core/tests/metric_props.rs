use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use systolica::complex::EdgeLoop;
use systolica::harness::generate::{grid_torus, subdivide, torus_sum};
use systolica::metric::{
    chart_point, e2, parse_path_block, path_length_gs, project_to_skeleton, radial_straighten,
    random_closed_path, support, Barycentric, Segment,
};
use systolica::systole::{homological_systole, Z2HomologyBasis};
use systolica::{MetricError, PolygonalPath, TriangulatedSurface};

fn corner(s: &TriangulatedSurface, t: usize, v: usize) -> usize {
    s.triangle(t)
        .iter()
        .position(|&x| x == v)
        .expect("vertex of triangle")
}

/// The point `(1 - f) a + f b` of edge `ab`, written in triangle `t`.
fn on_edge(s: &TriangulatedSurface, t: usize, a: usize, b: usize, f: f64) -> Barycentric {
    let mut mu = [0.0; 3];
    mu[corner(s, t, a)] = 1.0 - f;
    mu[corner(s, t, b)] += f;
    mu
}

fn triangle_with(s: &TriangulatedSurface, a: usize, b: usize) -> usize {
    let e = s.edge_between(a, b).unwrap();
    s.edge_triangles(e)[0]
}

#[test]
fn unit_area_edge_length() {
    // A regular triangle of side e has area √3 e² / 4.
    assert_relative_eq!(3f64.sqrt() * e2() * e2() / 4.0, 1.0, epsilon = 1e-14);
    let c = chart_point(&[0.0, 0.0, 1.0]);
    assert_relative_eq!((c[0] * c[0] + c[1] * c[1]).sqrt(), e2(), epsilon = 1e-14);
}

#[test]
fn simple_lengths() {
    let s = grid_torus(3).unwrap();
    let t = 0;
    let [a, b, _] = s.triangle(t);
    let edge = PolygonalPath::new(
        &s,
        vec![Segment {
            triangle: t,
            start: on_edge(&s, t, a, b, 0.0),
            end: on_edge(&s, t, a, b, 1.0),
        }],
        false,
    )
    .unwrap();
    assert_relative_eq!(path_length_gs(&edge), e2(), epsilon = 1e-14);
    let spoke = PolygonalPath::new(
        &s,
        vec![Segment {
            triangle: t,
            start: [1.0, 0.0, 0.0],
            end: [1.0 / 3.0; 3],
        }],
        false,
    )
    .unwrap();
    assert_relative_eq!(path_length_gs(&spoke), e2() / 3f64.sqrt(), epsilon = 1e-14);
    let point = PolygonalPath::new(
        &s,
        vec![Segment {
            triangle: t,
            start: [0.2, 0.3, 0.5],
            end: [0.2, 0.3, 0.5],
        }],
        false,
    )
    .unwrap();
    assert_eq!(path_length_gs(&point), 0.0);
}

fn chart_to_barycentric(p: [f64; 2]) -> Barycentric {
    let e = e2();
    let m2 = p[1] / (e * 3f64.sqrt() / 2.0);
    let m1 = p[0] / e - 0.5 * m2;
    [1.0 - m1 - m2, m1, m2]
}

/// Radial image of a chart point by bisection along the ray from the
/// barycentre.
fn radial_image(p: [f64; 2]) -> [f64; 2] {
    let c = chart_point(&[1.0 / 3.0; 3]);
    let at = |t: f64| [c[0] + t * (p[0] - c[0]), c[1] + t * (p[1] - c[1])];
    let inside = |t: f64| chart_to_barycentric(at(t)).iter().all(|&w| w >= 0.0);
    let (mut lo, mut hi) = (0.0, 1.0);
    while inside(hi) {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(lo)
}

fn random_boundary_point(rng: &mut ChaCha8Rng) -> Barycentric {
    let side = rng.gen_range(0..3);
    let f: f64 = rng.gen();
    let mut mu = [0.0; 3];
    mu[(side + 1) % 3] = 1.0 - f;
    mu[(side + 2) % 3] = f;
    mu
}

/// Length of the radial image of the chord `pa → pb` over `[t0, t1]`,
/// bisecting until consecutive images are close.
fn sampled_arc(pa: [f64; 2], pb: [f64; 2], t0: f64, t1: f64, depth: usize) -> f64 {
    let at = |t: f64| radial_image([pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]);
    let (p, q) = (at(t0), at(t1));
    let d = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt();
    if d < 1e-4 || depth > 50 {
        return d;
    }
    let mid = 0.5 * (t0 + t1);
    sampled_arc(pa, pb, t0, mid, depth + 1) + sampled_arc(pa, pb, mid, t1, depth + 1)
}

#[test]
fn radial_arc_matches_sampled_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let (a, b) = (
            random_boundary_point(&mut rng),
            random_boundary_point(&mut rng),
        );
        let arc = radial_straighten(0, a, b).unwrap();
        if arc.perturbed {
            continue;
        }
        let (pa, pb) = (chart_point(&a), chart_point(&b));
        let sampled = sampled_arc(pa, pb, 0.0, 1.0, 0);
        assert!(
            (arc.arc_length - sampled).abs() <= 1e-3 * arc.arc_length.max(1e-3),
            "{} vs {sampled}",
            arc.arc_length
        );
    }
}

#[test]
fn random_chords_never_shorten() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10_000 {
        let (a, b) = (
            random_boundary_point(&mut rng),
            random_boundary_point(&mut rng),
        );
        let arc = radial_straighten(0, a, b).unwrap();
        assert!(arc.ratio.is_finite());
        assert!(arc.arc_length >= arc.chord_length - 1e-12);
        assert!(arc.arc_length <= 3.0 * e2() + 1e-12);
        for p in &arc.pieces {
            assert!(p.start.iter().chain(&p.end).any(|&w| w.abs() < 1e-9));
        }
    }
    let same = radial_straighten(0, [0.5, 0.5, 0.0], [0.5, 0.5, 0.0]).unwrap();
    assert_eq!(same.ratio, 1.0);
    assert_eq!(
        radial_straighten(0, [0.4, 0.3, 0.3], [0.5, 0.5, 0.0]).unwrap_err(),
        MetricError::NotOnBoundary
    );
}

/// The six link vertices of `v` in cyclic order, with the star triangle
/// between consecutive ones.
fn ring(s: &TriangulatedSurface, v: usize) -> (Vec<usize>, Vec<usize>) {
    let link = s.link(v);
    let mut order = vec![link[0][0], link[0][1]];
    while order.len() < link.len() {
        let last = *order.last().unwrap();
        let prev = order[order.len() - 2];
        let next = link
            .iter()
            .find_map(|&[x, y]| match (x == last, y == last) {
                (true, _) if y != prev => Some(y),
                (_, true) if x != prev => Some(x),
                _ => None,
            })
            .unwrap();
        order.push(next);
    }
    let n = order.len();
    let tris = (0..n)
        .map(|i| {
            *s.star(v)
                .iter()
                .find(|&&t| {
                    let tri = s.triangle(t);
                    tri.contains(&order[i]) && tri.contains(&order[(i + 1) % n])
                })
                .unwrap()
        })
        .collect();
    (order, tris)
}

/// A closed path around `v` crossing each spoke at fraction `f` from `v`.
fn around<'s>(s: &'s TriangulatedSurface, v: usize, f: f64) -> PolygonalPath<'s> {
    let (w, tris) = ring(s, v);
    let n = w.len();
    let segments = (0..n)
        .map(|i| Segment {
            triangle: tris[i],
            start: on_edge(s, tris[i], v, w[i], f),
            end: on_edge(s, tris[i], v, w[(i + 1) % n], f),
        })
        .collect();
    PolygonalPath::new(s, segments, true).unwrap()
}

#[test]
fn loop_near_the_link_straightens_to_the_link() {
    let s = subdivide(&torus_sum(2).unwrap());
    let v = (0..s.vertex_count())
        .find(|&v| s.star(v).len() == 6)
        .unwrap();
    let (w, _) = ring(&s, v);
    let path = around(&s, v, 0.9);
    let r = project_to_skeleton(&path).unwrap();
    let out = r.output.unwrap();
    assert_eq!(out.canonical(), EdgeLoop::new(&s, w).unwrap().canonical());
    assert!(r.signature.unwrap().is_zero());
    assert_eq!(r.support, support(&path));
    assert_eq!(r.output_length, 6);
    assert_relative_eq!(r.kappa, e2() * 6.0 / path_length_gs(&path), epsilon = 1e-12);
}

#[test]
fn loop_near_the_vertex_collapses_to_it() {
    let s = grid_torus(4).unwrap();
    for v in [0, 5, 15] {
        for f in [0.5, 0.2] {
            let path = around(&s, v, f);
            let r = project_to_skeleton(&path).unwrap();
            assert_eq!(r.output, None);
            assert_eq!(r.basepoint, Some(v));
            assert_eq!(r.output_length, 0);
            assert!(r.signature.unwrap().is_zero());
        }
    }
}

#[test]
fn an_edge_loop_straightens_to_itself() {
    for s in [grid_torus(5).unwrap(), torus_sum(2).unwrap()] {
        let p = homological_systole(&s).unwrap().cycle;
        let segments: Vec<Segment> = p
            .steps()
            .map(|(a, b)| {
                let t = triangle_with(&s, a, b);
                Segment {
                    triangle: t,
                    start: on_edge(&s, t, a, b, 0.0),
                    end: on_edge(&s, t, a, b, 1.0),
                }
            })
            .collect();
        let path = PolygonalPath::new(&s, segments, true).unwrap();
        let r = project_to_skeleton(&path).unwrap();
        assert_eq!(r.output.as_ref().unwrap().canonical(), p.canonical());
        assert_relative_eq!(r.kappa, 1.0, epsilon = 1e-12);
        let basis = Z2HomologyBasis::new(&s).unwrap();
        assert_eq!(r.signature.unwrap(), basis.cycle_signature(&p).unwrap());
    }
}

#[test]
fn path_validation() {
    let s = grid_torus(3).unwrap();
    assert_eq!(
        PolygonalPath::new(&s, vec![], true).unwrap_err(),
        MetricError::EmptyPath
    );
    let bad = Segment {
        triangle: 99,
        start: [1.0, 0.0, 0.0],
        end: [0.0, 1.0, 0.0],
    };
    assert!(matches!(
        PolygonalPath::new(&s, vec![bad], false),
        Err(MetricError::BadTriangle {
            segment: 0,
            triangle: 99
        })
    ));
    let neg = Segment {
        triangle: 0,
        start: [1.5, -0.5, 0.0],
        end: [0.0, 1.0, 0.0],
    };
    assert_eq!(
        PolygonalPath::new(&s, vec![neg], false).unwrap_err(),
        MetricError::BadBarycentric { segment: 0 }
    );
    let a = Segment {
        triangle: 0,
        start: [1.0, 0.0, 0.0],
        end: [0.0, 1.0, 0.0],
    };
    let b = Segment {
        triangle: 0,
        start: [0.0, 0.0, 1.0],
        end: [1.0, 0.0, 0.0],
    };
    assert_eq!(
        PolygonalPath::new(&s, vec![a, b], false).unwrap_err(),
        MetricError::Discontinuous { segment: 0 }
    );
    let open = PolygonalPath::new(&s, vec![a], false).unwrap();
    assert_eq!(
        project_to_skeleton(&open).unwrap_err(),
        MetricError::NotClosed
    );
}

#[test]
fn random_paths_keep_support_and_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in 3..=6 {
        let s = grid_torus(k).unwrap();
        for _ in 0..200 {
            let steps = rng.gen_range(3..=40);
            let path = random_closed_path(&s, steps, &mut rng).unwrap();
            let r = project_to_skeleton(&path).unwrap();
            assert_eq!(r.support, support(&path));
            assert_eq!(r.signature, r.carrier_signature);
            assert!(r.kappa.is_finite() && r.kappa >= 0.0);
            if let Some(lp) = &r.output {
                assert_eq!(lp.len(), r.output_length);
            }
        }
    }
}

#[test]
fn parses_path_blocks() {
    let text = "# a loop\nPATH grid3.tri 2 closed\n0 1 0 0 0 1 0\n\n0 0 1 0 1 0 0\n";
    let spec = parse_path_block(text).unwrap();
    assert_eq!(spec.surface_file, "grid3.tri");
    assert!(spec.closed);
    assert_eq!(
        spec.segments[1],
        Segment {
            triangle: 0,
            start: [0.0, 1.0, 0.0],
            end: [1.0, 0.0, 0.0]
        }
    );
    let line_of = |text: &str| match parse_path_block(text) {
        Err(MetricError::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    };
    assert_eq!(line_of(""), 1);
    assert_eq!(line_of("PATH x.tri 1 sideways\n"), 1);
    assert_eq!(line_of("PATH x.tri 2 open\n0 1 0 0 0 1 0\n"), 3);
    assert_eq!(line_of("PATH x.tri 1 open\n0 1 0 0 0 1\n"), 2);
    assert_eq!(
        line_of("PATH x.tri 1 open\n0 1 0 0 0 1 0\n0 1 0 0 0 1 0\n"),
        3
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn splitting_keeps_length(seed in any::<u64>(), t in 0.01f64..0.99) {
        let s = grid_torus(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let path = random_closed_path(&s, 10, &mut rng).unwrap();
        let i = rng.gen_range(0..path.segments().len());
        let split = path.split_segment(i, t);
        prop_assert_eq!(split.segments().len(), path.segments().len() + 1);
        prop_assert!((path_length_gs(&split) - path_length_gs(&path)).abs() < 1e-12);
        prop_assert_eq!(support(&split), support(&path));
    }

    #[test]
    fn projection_is_deterministic(seed in any::<u64>()) {
        let s = grid_torus(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let path = random_closed_path(&s, 12, &mut rng).unwrap();
        let a = project_to_skeleton(&path).unwrap();
        let b = project_to_skeleton(&path).unwrap();
        prop_assert_eq!(a, b);
    }
}

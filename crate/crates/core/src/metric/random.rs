use std::collections::VecDeque;

use rand::Rng;

use crate::complex::TriangulatedSurface;

use super::path::{Barycentric, PolygonalPath, Segment};
use super::MetricError;

/// Barycentric coordinates in triangle `t` of the point `(1 - f) a + f b`.
fn edge_point(s: &TriangulatedSurface, t: usize, a: usize, b: usize, f: f64) -> Barycentric {
    let tri = s.triangle(t);
    let mut mu = [0.0; 3];
    for k in 0..3 {
        if tri[k] == a {
            mu[k] = 1.0 - f;
        } else if tri[k] == b {
            mu[k] = f;
        }
    }
    mu
}

fn across(s: &TriangulatedSurface, t: usize, e: usize) -> usize {
    let ts = s.edge_triangles(e);
    if ts[0] == t {
        ts[1]
    } else {
        ts[0]
    }
}

fn random_interior<R: Rng + ?Sized>(rng: &mut R) -> Barycentric {
    let (x, y): (f64, f64) = (rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
    let (x, y) = if x + y > 1.0 {
        (1.0 - x, 1.0 - y)
    } else {
        (x, y)
    };
    let mu = [1.0 - x - y, x, y];
    // Keep clear of the boundary.
    let total: f64 = mu.iter().map(|w| w.max(0.02)).sum();
    mu.map(|w| w.max(0.02) / total)
}

fn push_segment<R: Rng + ?Sized>(
    segments: &mut Vec<Segment>,
    triangle: usize,
    start: Barycentric,
    end: Barycentric,
    rng: &mut R,
) {
    if rng.gen_bool(0.25) {
        let mid = random_interior(rng);
        segments.push(Segment {
            triangle,
            start,
            end: mid,
        });
        segments.push(Segment {
            triangle,
            start: mid,
            end,
        });
    } else {
        segments.push(Segment {
            triangle,
            start,
            end,
        });
    }
}

/// A random closed path crossing edges transversally: `steps` random
/// crossings, then a shortest dual route back to the start. Junctions sit
/// at edge parameters in `[0.05, 0.95]`, never at vertices, and some
/// segments get an interior waypoint.
pub fn random_closed_path<'s, R: Rng + ?Sized>(
    s: &'s TriangulatedSurface,
    steps: usize,
    rng: &mut R,
) -> Result<PolygonalPath<'s>, MetricError> {
    if !s.is_closed() {
        return Err(MetricError::NotClosed);
    }
    let t0 = rng.gen_range(0..s.triangle_count());
    let e0 = s.triangle_edges(t0)[rng.gen_range(0..3)];
    let [a0, b0] = s.edge(e0);
    let f0: f64 = rng.gen_range(0.05..0.95);
    let t_end = across(s, t0, e0);

    let mut segments = Vec::new();
    let (mut t, mut entry_edge, mut ea, mut eb, mut ef) = (t0, e0, a0, b0, f0);
    for _ in 0..steps {
        let choices: Vec<usize> = s
            .triangle_edges(t)
            .into_iter()
            .filter(|&e| e != entry_edge)
            .collect();
        let exit = choices[rng.gen_range(0..choices.len())];
        let [xa, xb] = s.edge(exit);
        let xf: f64 = rng.gen_range(0.05..0.95);
        let from = edge_point(s, t, ea, eb, ef);
        let to = edge_point(s, t, xa, xb, xf);
        push_segment(&mut segments, t, from, to, rng);
        t = across(s, t, exit);
        (entry_edge, ea, eb, ef) = (exit, xa, xb, xf);
    }

    // Breadth-first route from t to t_end through the dual graph.
    let mut parent = vec![usize::MAX; s.triangle_count()];
    parent[t] = t;
    let mut queue = VecDeque::from([t]);
    while let Some(x) = queue.pop_front() {
        if x == t_end {
            break;
        }
        for e in s.triangle_edges(x) {
            let y = across(s, x, e);
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut route = vec![t_end];
    while *route.last().expect("non-empty") != t {
        route.push(parent[*route.last().expect("non-empty")]);
    }
    route.reverse();
    for w in route.windows(2) {
        let (x, y) = (w[0], w[1]);
        let shared = s
            .triangle_edges(x)
            .into_iter()
            .find(|&e| across(s, x, e) == y)
            .expect("route steps are adjacent");
        let [xa, xb] = s.edge(shared);
        let xf: f64 = rng.gen_range(0.05..0.95);
        let from = edge_point(s, x, ea, eb, ef);
        let to = edge_point(s, x, xa, xb, xf);
        push_segment(&mut segments, x, from, to, rng);
        (ea, eb, ef) = (xa, xb, xf);
    }
    let from = edge_point(s, t_end, ea, eb, ef);
    let to = edge_point(s, t_end, a0, b0, f0);
    push_segment(&mut segments, t_end, from, to, rng);
    PolygonalPath::new(s, segments, true)
}

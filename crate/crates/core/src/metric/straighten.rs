use std::collections::BTreeSet;
use std::f64::consts::TAU;

use crate::complex::EdgeLoop;
use crate::gf2::Gf2Vector;
use crate::systole::Z2HomologyBasis;

use super::path::{
    chart_distance, chart_point, e2, locate, path_length_gs, support, Barycentric, PolygonalPath,
    Segment, SurfacePoint, BARYCENTRIC_TOLERANCE,
};
use super::MetricError;

/// Size of the nudge applied to a waypoint of a chord through the barycentre,
/// as a fraction of the side length.
pub const BARYCENTRE_NUDGE: f64 = 1e-9;

const THIRD: f64 = TAU / 3.0;

fn barycentre() -> [f64; 2] {
    chart_point(&[1.0 / 3.0; 3])
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: [f64; 2]) -> f64 {
    dot(a, a).sqrt()
}

/// Chart to barycentric, inverting [`chart_point`].
#[cfg(test)]
fn to_barycentric(p: [f64; 2]) -> Barycentric {
    let e = e2();
    let m2 = p[1] * 2.0 / (e * 3f64.sqrt());
    let m1 = p[0] / e - 0.5 * m2;
    [1.0 - m1 - m2, m1, m2]
}

fn distance_to_barycentre(a: [f64; 2], b: [f64; 2]) -> f64 {
    let c = barycentre();
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(c, a), ab) / len2).clamp(0.0, 1.0)
    };
    norm(sub(c, [a[0] + t * ab[0], a[1] + t * ab[1]]))
}

/// Boundary parameter `u ∈ [0, 3)` of a point on `∂Δ`: edge `i` runs from
/// corner `i` to corner `i + 1` over `[i, i + 1)`.
fn boundary_parameter(mu: &Barycentric) -> Option<f64> {
    let z = (0..3)
        .min_by(|&i, &j| mu[i].total_cmp(&mu[j]))
        .expect("three coordinates");
    if mu[z] > BARYCENTRIC_TOLERANCE {
        return None;
    }
    let edge = (z + 1) % 3;
    let f = mu[(edge + 1) % 3].clamp(0.0, 1.0);
    Some((edge as f64 + f) % 3.0)
}

fn boundary_point(u: f64) -> Barycentric {
    let k = u.floor();
    let f = u - k;
    let edge = (k as i64).rem_euclid(3) as usize;
    let mut mu = [0.0; 3];
    mu[edge] = 1.0 - f;
    mu[(edge + 1) % 3] = f;
    mu
}

/// Angle of `p` about the barycentre, measured from corner 0, in `[0, 2π)`.
fn polar_angle(p: [f64; 2]) -> f64 {
    let c = barycentre();
    let d = sub(p, c);
    let d0 = sub(chart_point(&[1.0, 0.0, 0.0]), c);
    (d[1].atan2(d[0]) - d0[1].atan2(d0[0])).rem_euclid(TAU)
}

/// Boundary parameter hit by the ray from the barycentre at lifted angle `φ`.
fn lifted_parameter(phi: f64) -> f64 {
    let k = (phi / THIRD).floor();
    let alpha = phi - k * THIRD;
    let f = alpha.sin() / (alpha.sin() + (THIRD - alpha).sin());
    k + f
}

/// Inserts perturbed waypoints so no piece of the polyline passes through
/// the barycentre.
fn avoid_barycentre(points: &[[f64; 2]]) -> Result<(Vec<[f64; 2]>, bool), MetricError> {
    let e = e2();
    let tol = 1e-12 * e;
    let delta = BARYCENTRE_NUDGE * e;
    let c = barycentre();
    let mut perturbed = false;
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    let last = pts.len() - 1;
    for p in pts.iter_mut().take(last).skip(1) {
        if norm(sub(*p, c)) <= tol {
            *p = [p[0] + delta, p[1]];
            perturbed = true;
        }
    }
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if norm(sub(a, c)) <= tol || norm(sub(b, c)) <= tol {
            return Err(MetricError::ThroughBarycenter);
        }
        if distance_to_barycentre(a, b) > tol {
            out.push(b);
            continue;
        }
        let d = sub(b, a);
        let len = norm(d).max(f64::MIN_POSITIVE);
        let perp = [-d[1] / len, d[0] / len];
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let mut fixed = false;
        for sign in [1.0, -1.0] {
            let m = [
                mid[0] + sign * delta * perp[0],
                mid[1] + sign * delta * perp[1],
            ];
            if distance_to_barycentre(a, m) > tol && distance_to_barycentre(m, b) > tol {
                out.push(m);
                out.push(b);
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(MetricError::ThroughBarycenter);
        }
        perturbed = true;
    }
    Ok((out, perturbed))
}

/// Signed angle swept about the barycentre along the polyline.
fn swept_angle(points: &[[f64; 2]]) -> f64 {
    let c = barycentre();
    points
        .windows(2)
        .map(|w| {
            let (a, b) = (sub(w[0], c), sub(w[1], c));
            cross(a, b).atan2(dot(a, b))
        })
        .sum()
}

/// Radial straightening of a polyline inside one triangle whose ends lie on
/// the boundary: the boundary arc swept by projecting from the barycentre.
/// The arc starts and ends exactly at the polyline's ends.
fn straighten_polyline(
    triangle: usize,
    waypoints: &[Barycentric],
) -> Result<(Vec<Segment>, bool), MetricError> {
    let start = waypoints[0];
    let end = *waypoints.last().expect("non-empty");
    let u_start = boundary_parameter(&start).ok_or(MetricError::NotOnBoundary)?;
    let u_end = boundary_parameter(&end).ok_or(MetricError::NotOnBoundary)?;
    let chart: Vec<[f64; 2]> = waypoints.iter().map(chart_point).collect();
    let (chart, perturbed) = avoid_barycentre(&chart)?;
    let sweep = swept_angle(&chart);

    // Lift the start so the angle-based estimate agrees with the exact value.
    let phi = polar_angle(chart[0]);
    let approx_start = lifted_parameter(phi);
    let u0 = u_start + 3.0 * ((approx_start - u_start) / 3.0).round();
    let approx_end = lifted_parameter(phi + sweep) + (u0 - approx_start);
    let u1 = u_end + 3.0 * ((approx_end - u_end) / 3.0).round();

    let mut breaks = vec![u0];
    if u1 > u0 {
        let mut k = u0.floor() + 1.0;
        while k < u1 {
            breaks.push(k);
            k += 1.0;
        }
    } else {
        let mut k = u0.ceil() - 1.0;
        while k > u1 {
            breaks.push(k);
            k -= 1.0;
        }
    }
    breaks.push(u1);
    breaks.dedup();
    let mut points: Vec<Barycentric> = breaks.iter().map(|&u| boundary_point(u)).collect();
    *points.first_mut().expect("non-empty") = start;
    *points.last_mut().expect("non-empty") = end;
    if points.len() == 1 {
        points.push(end);
    }
    let pieces = points
        .windows(2)
        .map(|w| Segment {
            triangle,
            start: w[0],
            end: w[1],
        })
        .collect();
    Ok((pieces, perturbed))
}

/// Boundary path produced by straightening one chord.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryArc {
    pub pieces: Vec<Segment>,
    pub chord_length: f64,
    pub arc_length: f64,
    /// `arc_length / chord_length`; 1 for a degenerate chord.
    pub ratio: f64,
    /// Whether the chord had to be nudged off the barycentre.
    pub perturbed: bool,
}

/// Radially projects the chord `start → end` of `triangle` from its
/// barycentre onto the triangle's boundary.
pub fn radial_straighten(
    triangle: usize,
    start: Barycentric,
    end: Barycentric,
) -> Result<BoundaryArc, MetricError> {
    let (pieces, perturbed) = straighten_polyline(triangle, &[start, end])?;
    let chord_length = chart_distance(&start, &end);
    let arc_length: f64 = pieces
        .iter()
        .map(|s| chart_distance(&s.start, &s.end))
        .sum();
    let ratio = if chord_length > 0.0 {
        arc_length / chord_length
    } else {
        1.0
    };
    Ok(BoundaryArc {
        pieces,
        chord_length,
        arc_length,
        ratio,
        perturbed,
    })
}

/// Outcome of projecting a closed path onto the 1-skeleton.
#[derive(Debug, Clone, PartialEq)]
pub struct StraighteningResult {
    /// The edge loop, or `None` when the path collapses to a point.
    pub output: Option<EdgeLoop>,
    /// The vertex a collapsed path shrinks to.
    pub basepoint: Option<usize>,
    /// The straightened path: pieces on triangle boundaries, each kept in
    /// the triangle its input piece came from.
    pub pieces: Vec<Segment>,
    pub input_length: f64,
    pub output_length: usize,
    /// `l_T(p) / ℓ(γ)`.
    pub ratio: f64,
    /// `e₂ · l_T(p) / ℓ(γ)`.
    pub kappa: f64,
    pub support: BTreeSet<usize>,
    pub perturbed: bool,
    /// Z2 class of the output loop, when the surface is closed.
    pub signature: Option<Gf2Vector>,
    /// Z2 class of the vertex walk obtained by rounding each junction of the
    /// input to its nearest vertex.
    pub carrier_signature: Option<Gf2Vector>,
}

/// Runs of consecutive segments in the same triangle, rotated so that no
/// run wraps around the end of the list.
fn runs(segments: &[Segment]) -> Vec<Vec<Segment>> {
    let n = segments.len();
    let mut offset = 0;
    if segments.iter().any(|s| s.triangle != segments[0].triangle) {
        while segments[offset].triangle == segments[(offset + n - 1) % n].triangle {
            offset += 1;
        }
    }
    let mut out: Vec<Vec<Segment>> = Vec::new();
    for i in 0..n {
        let seg = segments[(offset + i) % n];
        match out.last_mut() {
            Some(run) if run[0].triangle == seg.triangle => run.push(seg),
            _ => out.push(vec![seg]),
        }
    }
    out
}

fn dedup_cyclic(mut walk: Vec<usize>) -> Vec<usize> {
    walk.dedup();
    while walk.len() > 1 && walk.first() == walk.last() {
        walk.pop();
    }
    walk
}

/// Nearer end of an edge point, ties to the smaller id.
fn nearest_vertex(p: &SurfacePoint) -> Option<usize> {
    match *p {
        SurfacePoint::Vertex(v) => Some(v),
        SurfacePoint::Edge { a, b, f } => Some(if f > 0.5 { b } else { a }),
        SurfacePoint::Interior { .. } => None,
    }
}

/// Projects a closed path onto the 1-skeleton.
///
/// Each maximal run inside one triangle is radially straightened onto that
/// triangle's boundary. The resulting walk along edges is read off as the
/// sequence of vertices it passes; stretches that leave a vertex into an
/// edge and come back are dropped, which is the snapping choice adding
/// least length. Every piece stays in its input triangle, so the support is
/// unchanged.
///
/// On a closed surface the output's Z2 class is checked against the class
/// of the input's carrier walk, and a mismatch is an error.
pub fn project_to_skeleton(path: &PolygonalPath<'_>) -> Result<StraighteningResult, MetricError> {
    if !path.is_closed() {
        return Err(MetricError::NotClosed);
    }
    let s = path.surface();
    let runs = runs(path.segments());
    let mut pieces = Vec::new();
    let mut perturbed = false;
    let single = runs.len() == 1;
    for run in &runs {
        let triangle = run[0].triangle;
        let mut waypoints = vec![run[0].start];
        waypoints.extend(run.iter().map(|seg| seg.end));
        if single {
            // A closed path inside one triangle: start from a boundary point
            // if it has one, else from the radial image of its first point.
            let first_on_boundary = waypoints
                .iter()
                .position(|w| boundary_parameter(w).is_some());
            match first_on_boundary {
                Some(i) => {
                    waypoints.pop();
                    waypoints.rotate_left(i);
                    waypoints.push(waypoints[0]);
                }
                None => {
                    let p = chart_point(&waypoints[0]);
                    let u = lifted_parameter(polar_angle(p)) % 3.0;
                    let b = boundary_point(u);
                    waypoints.insert(0, b);
                    waypoints.push(b);
                }
            }
        }
        let (run_pieces, nudged) = straighten_polyline(triangle, &waypoints)?;
        perturbed |= nudged;
        pieces.extend(run_pieces);
    }

    let located: Vec<SurfacePoint> = pieces
        .iter()
        .flat_map(|p| {
            [
                locate(s, p.triangle, &p.start),
                locate(s, p.triangle, &p.end),
            ]
        })
        .collect();
    let visits: Vec<usize> = located
        .iter()
        .filter_map(|p| match *p {
            SurfacePoint::Vertex(v) => Some(v),
            _ => None,
        })
        .collect();
    let walk = dedup_cyclic(visits);
    let (output, basepoint) = if walk.len() >= 2 {
        let lp = EdgeLoop::new(s, walk).map_err(|e| MetricError::Invariant(e.to_string()))?;
        (Some(lp), None)
    } else if let Some(&v) = walk.first() {
        (None, Some(v))
    } else {
        // Never touches a vertex: the walk lives inside one edge.
        (None, located.first().and_then(nearest_vertex))
    };

    let input_support = support(path);
    let output_support: BTreeSet<usize> = pieces.iter().map(|p| p.triangle).collect();
    if input_support != output_support {
        return Err(MetricError::SupportMismatch);
    }

    let (signature, carrier_signature) = if s.is_closed() {
        let basis = Z2HomologyBasis::new(s).map_err(|e| MetricError::Invariant(e.to_string()))?;
        let out_sig = match &output {
            Some(lp) => basis
                .cycle_signature(lp)
                .map_err(|e| MetricError::Invariant(e.to_string()))?,
            None => Gf2Vector::zeros(basis.rank()),
        };
        let carrier = if single {
            Vec::new()
        } else {
            // Junction i is where run i ends and run i + 1 begins.
            let rounded: Option<Vec<usize>> = runs
                .iter()
                .map(|run| {
                    let last = run.last().expect("non-empty run");
                    nearest_vertex(&locate(s, last.triangle, &last.end))
                })
                .collect();
            dedup_cyclic(rounded.ok_or_else(|| {
                MetricError::Invariant("a junction between triangles is interior".into())
            })?)
        };
        let carrier_sig = if carrier.len() >= 2 {
            let lp =
                EdgeLoop::new(s, carrier).map_err(|e| MetricError::Invariant(e.to_string()))?;
            basis
                .cycle_signature(&lp)
                .map_err(|e| MetricError::Invariant(e.to_string()))?
        } else {
            Gf2Vector::zeros(basis.rank())
        };
        if out_sig != carrier_sig {
            return Err(MetricError::SignatureMismatch);
        }
        (Some(out_sig), Some(carrier_sig))
    } else {
        (None, None)
    };

    let input_length = path_length_gs(path);
    let output_length = output.as_ref().map_or(0, EdgeLoop::len);
    let ratio = if input_length > 0.0 {
        output_length as f64 / input_length
    } else {
        0.0
    };
    Ok(StraighteningResult {
        output,
        basepoint,
        pieces,
        input_length,
        output_length,
        ratio,
        kappa: e2() * ratio,
        support: input_support,
        perturbed,
        signature,
        carrier_signature,
    })
}

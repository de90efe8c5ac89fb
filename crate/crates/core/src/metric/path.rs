use std::collections::BTreeSet;

use crate::complex::TriangulatedSurface;

use super::{equilateral_edge_length, MetricError};

/// Tolerance for barycentric sums, signs and junction matching.
pub const BARYCENTRIC_TOLERANCE: f64 = 1e-9;

pub type Barycentric = [f64; 3];

/// A straight piece inside one triangle, in that triangle's barycentric
/// coordinates (ordered as the triangle's vertex triple).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub triangle: usize,
    pub start: Barycentric,
    pub end: Barycentric,
}

/// Side length of every triangle under the equilateral unit-area metric.
pub fn e2() -> f64 {
    equilateral_edge_length(2)
}

/// Chart position of a barycentric point in the equilateral triangle with
/// corners `(0, 0)`, `(e, 0)`, `(e/2, e√3/2)`.
pub fn chart_point(mu: &Barycentric) -> [f64; 2] {
    let e = e2();
    [e * (mu[1] + 0.5 * mu[2]), e * mu[2] * 3f64.sqrt() / 2.0]
}

pub(crate) fn chart_distance(a: &Barycentric, b: &Barycentric) -> f64 {
    let (p, q) = (chart_point(a), chart_point(b));
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Where a barycentric point sits on the surface, independent of which
/// triangle it was written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SurfacePoint {
    Vertex(usize),
    /// Point `(1 - f) a + f b` on the edge `a < b`.
    Edge {
        a: usize,
        b: usize,
        f: f64,
    },
    Interior {
        triangle: usize,
        mu: Barycentric,
    },
}

pub(crate) fn locate(s: &TriangulatedSurface, triangle: usize, mu: &Barycentric) -> SurfacePoint {
    let t = s.triangle(triangle);
    if let Some(i) = (0..3).find(|&i| mu[i] >= 1.0 - BARYCENTRIC_TOLERANCE) {
        return SurfacePoint::Vertex(t[i]);
    }
    if let Some(z) = (0..3).find(|&i| mu[i] <= BARYCENTRIC_TOLERANCE) {
        let (i, j) = ((z + 1) % 3, (z + 2) % 3);
        let (a, b, f) = if t[i] < t[j] {
            (t[i], t[j], mu[j])
        } else {
            (t[j], t[i], mu[i])
        };
        return SurfacePoint::Edge { a, b, f };
    }
    SurfacePoint::Interior { triangle, mu: *mu }
}

pub(crate) fn same_point(x: &SurfacePoint, y: &SurfacePoint) -> bool {
    match (x, y) {
        (SurfacePoint::Vertex(a), SurfacePoint::Vertex(b)) => a == b,
        (SurfacePoint::Edge { a, b, f }, SurfacePoint::Edge { a: c, b: d, f: g }) => {
            a == c && b == d && (f - g).abs() <= BARYCENTRIC_TOLERANCE
        }
        (
            SurfacePoint::Interior { triangle, mu },
            SurfacePoint::Interior {
                triangle: t,
                mu: nu,
            },
        ) => {
            triangle == t
                && mu
                    .iter()
                    .zip(nu)
                    .all(|(x, y)| (x - y).abs() <= BARYCENTRIC_TOLERANCE)
        }
        _ => false,
    }
}

fn check_barycentric(mu: &Barycentric, segment: usize) -> Result<(), MetricError> {
    let ok = mu
        .iter()
        .all(|&w| w.is_finite() && w >= -BARYCENTRIC_TOLERANCE)
        && (mu.iter().sum::<f64>() - 1.0).abs() <= BARYCENTRIC_TOLERANCE;
    if ok {
        Ok(())
    } else {
        Err(MetricError::BadBarycentric { segment })
    }
}

/// A piecewise straight path through triangles, straight in each chart.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalPath<'s> {
    surface: &'s TriangulatedSurface,
    segments: Vec<Segment>,
    closed: bool,
}

impl<'s> PolygonalPath<'s> {
    /// Validates coordinates and that consecutive segments meet at the same
    /// surface point (and, when closed, that the last meets the first).
    pub fn new(
        surface: &'s TriangulatedSurface,
        segments: Vec<Segment>,
        closed: bool,
    ) -> Result<Self, MetricError> {
        if segments.is_empty() {
            return Err(MetricError::EmptyPath);
        }
        for (i, seg) in segments.iter().enumerate() {
            if seg.triangle >= surface.triangle_count() {
                return Err(MetricError::BadTriangle {
                    segment: i,
                    triangle: seg.triangle,
                });
            }
            check_barycentric(&seg.start, i)?;
            check_barycentric(&seg.end, i)?;
        }
        let n = segments.len();
        let joins = if closed { n } else { n - 1 };
        for i in 0..joins {
            let (a, b) = (&segments[i], &segments[(i + 1) % n]);
            let x = locate(surface, a.triangle, &a.end);
            let y = locate(surface, b.triangle, &b.start);
            if !same_point(&x, &y) {
                return Err(MetricError::Discontinuous { segment: i });
            }
        }
        Ok(PolygonalPath {
            surface,
            segments,
            closed,
        })
    }

    pub fn surface(&self) -> &'s TriangulatedSurface {
        self.surface
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Splits segment `i` at parameter `t ∈ (0, 1)`.
    pub fn split_segment(&self, i: usize, t: f64) -> PolygonalPath<'s> {
        let seg = self.segments[i];
        let mid: Barycentric = std::array::from_fn(|k| (1.0 - t) * seg.start[k] + t * seg.end[k]);
        let mut segments = self.segments.clone();
        segments[i].end = mid;
        segments.insert(
            i + 1,
            Segment {
                triangle: seg.triangle,
                start: mid,
                end: seg.end,
            },
        );
        PolygonalPath {
            surface: self.surface,
            segments,
            closed: self.closed,
        }
    }
}

/// Length under the equilateral metric: the sum of chart chord lengths.
pub fn path_length_gs(path: &PolygonalPath<'_>) -> f64 {
    path.segments
        .iter()
        .map(|s| chart_distance(&s.start, &s.end))
        .sum()
}

/// Triangle ids of the facets the path passes through, taken as the
/// triangles its pieces are recorded in.
pub fn support(path: &PolygonalPath<'_>) -> BTreeSet<usize> {
    path.segments.iter().map(|s| s.triangle).collect()
}

/// Body of a `PATH` block, before the surface it names is loaded.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    pub surface_file: String,
    pub segments: Vec<Segment>,
    pub closed: bool,
}

/// Parses `PATH <surface-file> <n-segments> closed|open` followed by one
/// `tri a0 a1 a2 b0 b1 b2` line per segment.
pub fn parse_path_block(text: &str) -> Result<PathSpec, MetricError> {
    let err = |line: usize, message: String| MetricError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing PATH header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "PATH" {
        return Err(err(
            line,
            "expected 'PATH <surface-file> <n-segments> closed|open'".into(),
        ));
    }
    let n: usize = fields[2]
        .parse()
        .map_err(|_| err(line, format!("'{}' is not a segment count", fields[2])))?;
    let closed = match fields[3] {
        "closed" => true,
        "open" => false,
        other => {
            return Err(err(
                line,
                format!("expected 'closed' or 'open', got '{other}'"),
            ))
        }
    };
    let mut segments = Vec::with_capacity(n);
    let mut last = line;
    for _ in 0..n {
        let (line, content) = lines
            .next()
            .ok_or_else(|| err(last + 1, format!("expected {n} segments")))?;
        last = line;
        let f: Vec<&str> = content.split_whitespace().collect();
        if f.len() != 7 {
            return Err(err(line, "expected 'tri a0 a1 a2 b0 b1 b2'".into()));
        }
        let triangle = f[0]
            .parse()
            .map_err(|_| err(line, format!("'{}' is not a triangle id", f[0])))?;
        let mut coords = [0.0; 6];
        for (c, text) in coords.iter_mut().zip(&f[1..]) {
            *c = text
                .parse()
                .map_err(|_| err(line, format!("'{text}' is not a number")))?;
        }
        segments.push(Segment {
            triangle,
            start: [coords[0], coords[1], coords[2]],
            end: [coords[3], coords[4], coords[5]],
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, format!("more than {n} segments")));
    }
    Ok(PathSpec {
        surface_file: fields[1].to_string(),
        segments,
        closed,
    })
}

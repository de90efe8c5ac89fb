//! Reproducible surface generators.
//!
//! A [`Generator`] is both the recipe and its provenance: its `Display` form
//! parses back to the same generator, e.g. `subdivide(grid-torus(4),2)` or
//! `random-flips(torus-sum(2),20,7)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{SurfaceError, Triangle, TriangulatedSurface};
use crate::surgery::{dehn_twist, SurgeryError};
use crate::systole::{homological_systole, SystoleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot parse generator {text:?}: {reason}")]
    Syntax { text: String, reason: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Systole(#[from] SystoleError),
    #[error("no admissible flip found after {attempts} attempts ({done} of {wanted} done)")]
    FlipsExhausted {
        attempts: usize,
        done: usize,
        wanted: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    SphereTetra,
    CsaszarTorus,
    GridTorus {
        k: usize,
    },
    /// Coned `4g`-gon with the standard word, barycentrically subdivided.
    GenusPolygon {
        genus: usize,
        rounds: usize,
    },
    /// Connected sum of `genus` seven-vertex tori.
    TorusSum {
        genus: usize,
    },
    Subdivide {
        base: Box<Generator>,
        rounds: usize,
    },
    /// Twist along the homological systole loop of the base surface.
    Twist {
        base: Box<Generator>,
        offset: usize,
    },
    RandomFlips {
        base: Box<Generator>,
        count: usize,
        seed: u64,
    },
}

impl Generator {
    pub fn generate(&self) -> Result<TriangulatedSurface, GenerateError> {
        match self {
            Generator::SphereTetra => Ok(sphere_tetra()),
            Generator::CsaszarTorus => Ok(csaszar_torus()),
            Generator::GridTorus { k } => grid_torus(*k),
            Generator::GenusPolygon { genus, rounds } => genus_polygon(*genus, *rounds),
            Generator::TorusSum { genus } => torus_sum(*genus),
            Generator::Subdivide { base, rounds } => {
                let mut s = base.generate()?;
                for _ in 0..*rounds {
                    s = subdivide(&s);
                }
                Ok(s)
            }
            Generator::Twist { base, offset } => {
                let s = base.generate()?;
                let systole = homological_systole(&s)?;
                Ok(dehn_twist(&s, &systole.cycle, *offset)?)
            }
            Generator::RandomFlips { base, count, seed } => {
                random_flips(&base.generate()?, *count, *seed)
            }
        }
    }

    /// Parses a generator, filling an omitted `random-flips` seed with
    /// `default_seed`.
    pub fn parse_with_seed(text: &str, default_seed: u64) -> Result<Self, GenerateError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            text: &compact,
            pos: 0,
            default_seed,
        };
        let g = parser.generator()?;
        if parser.pos != compact.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(g)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::SphereTetra => write!(f, "sphere-tetra"),
            Generator::CsaszarTorus => write!(f, "csaszar-torus"),
            Generator::GridTorus { k } => write!(f, "grid-torus({k})"),
            Generator::GenusPolygon { genus, rounds } => {
                write!(f, "genus-polygon({genus},{rounds})")
            }
            Generator::TorusSum { genus } => write!(f, "torus-sum({genus})"),
            Generator::Subdivide { base, rounds } => write!(f, "subdivide({base},{rounds})"),
            Generator::Twist { base, offset } => write!(f, "twist({base},{offset})"),
            Generator::RandomFlips { base, count, seed } => {
                write!(f, "random-flips({base},{count},{seed})")
            }
        }
    }
}

impl FromStr for Generator {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::parse_with_seed(s, 0)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    default_seed: u64,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> GenerateError {
        GenerateError::Syntax {
            text: self.text.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GenerateError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn name(&mut self) -> &str {
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<u64, GenerateError> {
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let digits = &self.rest()[..len];
        let value = digits
            .parse()
            .map_err(|_| self.error("expected a number"))?;
        self.pos += len;
        Ok(value)
    }

    fn count(&mut self) -> Result<usize, GenerateError> {
        let n = self.number()?;
        usize::try_from(n).map_err(|_| self.error("number out of range"))
    }

    fn generator(&mut self) -> Result<Generator, GenerateError> {
        let name = self.name().to_string();
        let g = match name.as_str() {
            "sphere-tetra" => Generator::SphereTetra,
            "csaszar-torus" => Generator::CsaszarTorus,
            "grid-torus" => {
                self.expect('(')?;
                let k = self.count()?;
                self.expect(')')?;
                Generator::GridTorus { k }
            }
            "genus-polygon" => {
                self.expect('(')?;
                let genus = self.count()?;
                self.expect(',')?;
                let rounds = self.count()?;
                self.expect(')')?;
                Generator::GenusPolygon { genus, rounds }
            }
            "torus-sum" => {
                self.expect('(')?;
                let genus = self.count()?;
                self.expect(')')?;
                Generator::TorusSum { genus }
            }
            "subdivide" | "twist" | "random-flips" => {
                self.expect('(')?;
                let base = Box::new(self.generator()?);
                self.expect(',')?;
                let first = self.count()?;
                let g = match name.as_str() {
                    "subdivide" => Generator::Subdivide {
                        base,
                        rounds: first,
                    },
                    "twist" => Generator::Twist {
                        base,
                        offset: first,
                    },
                    _ => {
                        let seed = if self.eat(',') {
                            self.number()?
                        } else {
                            self.default_seed
                        };
                        Generator::RandomFlips {
                            base,
                            count: first,
                            seed,
                        }
                    }
                };
                self.expect(')')?;
                g
            }
            "" => return Err(self.error("expected a generator name")),
            other => return Err(self.error(&format!("unknown generator '{other}'"))),
        };
        Ok(g)
    }
}

/// The boundary of the 3-simplex.
pub fn sphere_tetra() -> TriangulatedSurface {
    TriangulatedSurface::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]], false)
        .expect("tetrahedron boundary is a sphere")
}

fn csaszar_triangles() -> Vec<Triangle> {
    let mut tris = Vec::with_capacity(14);
    for i in 0..7 {
        tris.push([i, (i + 1) % 7, (i + 3) % 7]);
        tris.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    tris
}

/// The seven-vertex torus: triangles `(i, i+1, i+3)` and `(i, i+2, i+3)`
/// modulo 7.
pub fn csaszar_torus() -> TriangulatedSurface {
    TriangulatedSurface::new(7, csaszar_triangles(), false).expect("seven-vertex torus is valid")
}

/// The `k × k` square grid with wraparound, each square split along its
/// main diagonal. Vertex `(i, j)` has id `i·k + j`.
pub fn grid_torus(k: usize) -> Result<TriangulatedSurface, GenerateError> {
    if k < 3 {
        return Err(GenerateError::InvalidParams(format!(
            "grid-torus needs k >= 3, got {k}"
        )));
    }
    let id = |i: usize, j: usize| (i % k) * k + (j % k);
    let mut tris = Vec::with_capacity(2 * k * k);
    for i in 0..k {
        for j in 0..k {
            tris.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    Ok(TriangulatedSurface::new(k * k, tris, false)?)
}

/// Connected sum of `genus` copies of the seven-vertex torus. Copy `j` has
/// its triangle `{0, 1, 3}` glued onto triangle `{2, 4, 5}` of copy `j - 1`,
/// giving `4g + 3` vertices and `12g + 2` triangles.
pub fn torus_sum(genus: usize) -> Result<TriangulatedSurface, GenerateError> {
    if genus == 0 {
        return Err(GenerateError::InvalidParams(
            "torus-sum needs genus >= 1".into(),
        ));
    }
    let base = csaszar_triangles();
    let mut tris: Vec<Triangle> = Vec::with_capacity(12 * genus + 2);
    let mut previous: [usize; 7] = std::array::from_fn(|v| v);
    tris.extend(base.iter().copied());
    let mut next_id = 7;
    for _ in 1..genus {
        let mut ids = [usize::MAX; 7];
        ids[0] = previous[2];
        ids[1] = previous[4];
        ids[3] = previous[5];
        for v in [2, 4, 5, 6] {
            ids[v] = next_id;
            next_id += 1;
        }
        let removed = {
            let mut t = [previous[2], previous[4], previous[5]];
            t.sort_unstable();
            t
        };
        tris.retain(|t| {
            let mut s = *t;
            s.sort_unstable();
            s != removed
        });
        tris.extend(
            base.iter()
                .filter(|t| {
                    let mut s = **t;
                    s.sort_unstable();
                    s != [0, 1, 3]
                })
                .map(|t| t.map(|v| ids[v])),
        );
        previous = ids;
    }
    Ok(TriangulatedSurface::new(next_id, tris, false)?)
}

/// A 2-dimensional Δ-complex: triangles with corner vertices and side edges,
/// where side `k` joins corners `k+1` and `k+2` (mod 3) and `flip[k]` is set
/// when corner `k+1` sits at the edge's second end.
struct DeltaComplex {
    vertex_count: usize,
    edge_count: usize,
    corners: Vec<[usize; 3]>,
    sides: Vec<[usize; 3]>,
    flips: Vec<[bool; 3]>,
}

impl DeltaComplex {
    /// The `4g`-gon `a1 b1 a1⁻¹ b1⁻¹ …` coned from its centre. Vertex 0 is
    /// the single polygon vertex, vertex 1 is the centre; spoke `j` is edge
    /// `j`, and the side labels are edges `4g..6g`.
    fn polygon(genus: usize) -> Self {
        let n = 4 * genus;
        let mut corners = Vec::with_capacity(n);
        let mut sides = Vec::with_capacity(n);
        let mut flips = Vec::with_capacity(n);
        for k in 0..n {
            let block = k / 4;
            let (label, inverse) = match k % 4 {
                0 => (2 * block, false),
                1 => (2 * block + 1, false),
                2 => (2 * block, true),
                _ => (2 * block + 1, true),
            };
            corners.push([1, 0, 0]);
            sides.push([n + label, (k + 1) % n, k]);
            flips.push([inverse, true, false]);
        }
        DeltaComplex {
            vertex_count: 2,
            edge_count: n + 2 * genus,
            corners,
            sides,
            flips,
        }
    }

    fn barycentric(&self) -> Self {
        let (v, e, f) = (self.vertex_count, self.edge_count, self.corners.len());
        let mid = |edge: usize| v + edge;
        let centre = |t: usize| v + e + t;
        let half = |edge: usize, end: usize| 2 * edge + end;
        let corner_spoke = |t: usize, c: usize| 2 * e + 6 * t + c;
        let side_spoke = |t: usize, k: usize| 2 * e + 6 * t + 3 + k;
        let mut corners = Vec::with_capacity(6 * f);
        let mut sides = Vec::with_capacity(6 * f);
        let mut flips = Vec::with_capacity(6 * f);
        for t in 0..f {
            for c in 0..3 {
                for k in (0..3).filter(|&k| k != c) {
                    let at_first = c == (k + 1) % 3;
                    let end = usize::from(at_first == self.flips[t][k]);
                    let edge = self.sides[t][k];
                    corners.push([self.corners[t][c], mid(edge), centre(t)]);
                    sides.push([side_spoke(t, k), corner_spoke(t, c), half(edge, end)]);
                    flips.push([false, true, false]);
                }
            }
        }
        DeltaComplex {
            vertex_count: v + e + f,
            edge_count: 2 * e + 6 * f,
            corners,
            sides,
            flips,
        }
    }
}

/// The coned canonical `4g`-gon after `rounds` barycentric subdivisions.
/// Two rounds are needed before the result is simplicial.
pub fn genus_polygon(genus: usize, rounds: usize) -> Result<TriangulatedSurface, GenerateError> {
    if genus == 0 {
        return Err(GenerateError::InvalidParams(
            "genus-polygon needs genus >= 1".into(),
        ));
    }
    if rounds < 2 {
        return Err(GenerateError::InvalidParams(format!(
            "genus-polygon needs at least 2 subdivision rounds to be simplicial, got {rounds}"
        )));
    }
    let mut complex = DeltaComplex::polygon(genus);
    for _ in 0..rounds {
        complex = complex.barycentric();
    }
    let s = TriangulatedSurface::new(complex.vertex_count, complex.corners, false)?;
    if s.genus() != Some(genus) {
        return Err(GenerateError::InvalidParams(format!(
            "construction produced genus {:?}, expected {genus}",
            s.genus()
        )));
    }
    Ok(s)
}

/// One round of 1→4 edge-midpoint subdivision. The midpoint of edge `e`
/// gets id `V + e`; triangle order and orientation follow the input.
pub fn subdivide(s: &TriangulatedSurface) -> TriangulatedSurface {
    let v = s.vertex_count();
    let mid = |a: usize, b: usize| v + s.edge_between(a, b).expect("triangle sides are edges");
    let mut tris = Vec::with_capacity(4 * s.triangle_count());
    for &[a, b, c] in s.triangles() {
        let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
        tris.push([a, ab, ca]);
        tris.push([b, bc, ab]);
        tris.push([c, ca, bc]);
        tris.push([ab, bc, ca]);
    }
    TriangulatedSurface::new(v + s.edge_count(), tris, s.boundary_allowed())
        .expect("midpoint subdivision of a valid surface is valid")
}

/// Performs `count` random edge flips chosen by a seeded generator.
///
/// A flip of edge `ab` between `abc` and `bad` is admissible when `cd` is not
/// already an edge and both `a` and `b` keep degree at least 3.
pub fn random_flips(
    s: &TriangulatedSurface,
    count: usize,
    seed: u64,
) -> Result<TriangulatedSurface, GenerateError> {
    if !s.is_closed() || !s.is_orientable() {
        return Err(GenerateError::InvalidParams(
            "random-flips needs a closed orientable surface".into(),
        ));
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut tris: Vec<Triangle> = s.oriented_triangles().expect("orientable").to_vec();
    let mut edges: Vec<(usize, usize)> = s.edges().iter().map(|&[a, b]| (a, b)).collect();
    let mut incident: HashMap<(usize, usize), [usize; 2]> = HashMap::with_capacity(edges.len());
    for (e, &(a, b)) in edges.iter().enumerate() {
        let ts = s.edge_triangles(e);
        incident.insert((a, b), [ts[0], ts[1]]);
    }
    let mut degree: Vec<usize> = (0..s.vertex_count())
        .map(|x| s.neighbours(x).len())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_attempts = 100 * count.max(1);
    let mut done = 0;
    let mut attempts = 0;
    while done < count {
        if attempts == max_attempts {
            return Err(GenerateError::FlipsExhausted {
                attempts,
                done,
                wanted: count,
            });
        }
        attempts += 1;
        let slot = rng.gen_range(0..edges.len());
        let (a, b) = edges[slot];
        let [t1, t2] = incident[&(a, b)];
        // Orient so that t1 = (a, b, c) and t2 = (b, a, d).
        let rot = |t: Triangle, first: usize| -> Triangle {
            let i = t
                .iter()
                .position(|&x| x == first)
                .expect("vertex in triangle");
            [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
        };
        let (mut t1, mut t2) = (t1, t2);
        if rot(tris[t1], a)[1] != b {
            std::mem::swap(&mut t1, &mut t2);
        }
        let c = rot(tris[t1], a)[2];
        let d = rot(tris[t2], b)[2];
        if c == d || incident.contains_key(&key(c, d)) || degree[a] <= 3 || degree[b] <= 3 {
            continue;
        }
        tris[t1] = [a, d, c];
        tris[t2] = [d, b, c];
        incident.remove(&(a, b));
        incident.insert(key(c, d), [t1, t2]);
        // Side ad moves from t2 to t1, side bc from t1 to t2.
        for (edge, from, to) in [(key(a, d), t2, t1), (key(b, c), t1, t2)] {
            let pair = incident.get_mut(&edge).expect("quad side is an edge");
            for t in pair.iter_mut() {
                if *t == from {
                    *t = to;
                }
            }
        }
        edges[slot] = key(c, d);
        degree[a] -= 1;
        degree[b] -= 1;
        degree[c] += 1;
        degree[d] += 1;
        done += 1;
    }
    Ok(TriangulatedSurface::new(s.vertex_count(), tris, false)?)
}

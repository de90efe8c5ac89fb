//! Validated closed (or bounded) triangulated 2-manifolds.

use std::collections::VecDeque;

use super::edge_loop::EdgeLoop;
use super::union_find::UnionFind;

/// A triangle as three vertex ids, in the order it was supplied.
pub type Triangle = [usize; 3];

const NO_TRIANGLE: usize = usize::MAX;

/// Reasons a triangle list is rejected by [`TriangulatedSurface::new`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("triangle list is empty")]
    Empty,
    #[error(
        "triangle {triangle} references vertex {vertex}, but the vertex count is {vertex_count}"
    )]
    VertexOutOfRange {
        triangle: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("vertex {0} does not appear in any triangle")]
    IsolatedVertex(usize),
    #[error("triangle {0} repeats a vertex")]
    DegenerateTriangle(usize),
    #[error("triangles {first} and {second} have the same vertex set")]
    DuplicateTriangle { first: usize, second: usize },
    #[error("edge ({0}, {1}) lies in {2} triangles")]
    NonManifoldEdge(usize, usize, usize),
    #[error("edge ({0}, {1}) lies in a single triangle but the surface must be closed")]
    BoundaryEdge(usize, usize),
    #[error("link of vertex {0} is not a single cycle or path")]
    BadLink(usize),
    #[error("surface has {0} connected components")]
    Disconnected(usize),
}

/// Euler characteristic, orientability and simplex counts of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TopologyInvariants {
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_components: usize,
    /// `(2 - χ) / 2`; only defined for closed orientable surfaces.
    pub genus: Option<usize>,
}

/// A connected simplicial 2-manifold, closed or with boundary.
///
/// Immutable once built. Triangles keep the order and vertex order they were
/// supplied in, so triangle ids are stable across IO round trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedSurface {
    vertex_count: usize,
    triangles: Vec<Triangle>,
    boundary_allowed: bool,
    /// Sorted endpoint pairs; edge ids index this list.
    edges: Vec<[usize; 2]>,
    /// Incident triangles per edge; the second slot is `NO_TRIANGLE` on boundary edges.
    edge_triangles: Vec<[usize; 2]>,
    /// Edge opposite each corner of each triangle.
    triangle_edges: Vec<[usize; 3]>,
    /// `(neighbour, edge id)` pairs, ascending by neighbour.
    adjacency: Vec<Vec<(usize, usize)>>,
    /// Triangles containing each vertex, ascending by triangle id.
    stars: Vec<Vec<usize>>,
    /// Consistently oriented copy of `triangles`, present iff the surface is orientable.
    orientation: Option<Vec<Triangle>>,
}

impl TriangulatedSurface {
    /// Builds and validates a surface on vertices `0..vertex_count`.
    pub fn new(
        vertex_count: usize,
        triangles: Vec<Triangle>,
        boundary_allowed: bool,
    ) -> Result<Self, SurfaceError> {
        if triangles.is_empty() {
            return Err(SurfaceError::Empty);
        }
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= vertex_count {
                    return Err(SurfaceError::VertexOutOfRange {
                        triangle: t,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(SurfaceError::DegenerateTriangle(t));
            }
        }

        let mut keyed: Vec<(Triangle, usize)> = triangles
            .iter()
            .enumerate()
            .map(|(t, tri)| (sorted3(*tri), t))
            .collect();
        keyed.sort_unstable();
        if let Some(pair) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(SurfaceError::DuplicateTriangle {
                first: pair[0].1,
                second: pair[1].1,
            });
        }

        // Each triangle side, keyed by its sorted endpoints.
        let mut sides: Vec<([usize; 2], usize, usize)> = Vec::with_capacity(triangles.len() * 3);
        for (t, tri) in triangles.iter().enumerate() {
            for corner in 0..3 {
                let a = tri[(corner + 1) % 3];
                let b = tri[(corner + 2) % 3];
                sides.push(([a.min(b), a.max(b)], t, corner));
            }
        }
        sides.sort_unstable();

        let mut edges = Vec::new();
        let mut edge_triangles = Vec::new();
        let mut triangle_edges = vec![[0usize; 3]; triangles.len()];
        let mut i = 0;
        while i < sides.len() {
            let key = sides[i].0;
            let mut j = i;
            while j < sides.len() && sides[j].0 == key {
                j += 1;
            }
            let count = j - i;
            if count > 2 {
                return Err(SurfaceError::NonManifoldEdge(key[0], key[1], count));
            }
            if count == 1 && !boundary_allowed {
                return Err(SurfaceError::BoundaryEdge(key[0], key[1]));
            }
            let id = edges.len();
            edges.push(key);
            let mut incident = [NO_TRIANGLE; 2];
            for (slot, side) in sides[i..j].iter().enumerate() {
                incident[slot] = side.1;
                triangle_edges[side.1][side.2] = id;
            }
            edge_triangles.push(incident);
            i = j;
        }

        let mut stars = vec![Vec::new(); vertex_count];
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                stars[v].push(t);
            }
        }
        if let Some(v) = stars.iter().position(Vec::is_empty) {
            return Err(SurfaceError::IsolatedVertex(v));
        }

        let mut adjacency = vec![Vec::new(); vertex_count];
        for (e, &[a, b]) in edges.iter().enumerate() {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut surface = TriangulatedSurface {
            vertex_count,
            triangles,
            boundary_allowed,
            edges,
            edge_triangles,
            triangle_edges,
            adjacency,
            stars,
            orientation: None,
        };
        for v in 0..vertex_count {
            surface.check_link(v)?;
        }
        let components = surface.triangle_components();
        if components > 1 {
            return Err(SurfaceError::Disconnected(components));
        }
        surface.orientation = surface.orient();
        Ok(surface)
    }

    /// Builds a surface whose vertex count is one more than the largest id used.
    pub fn from_triangles(
        triangles: Vec<Triangle>,
        boundary_allowed: bool,
    ) -> Result<Self, SurfaceError> {
        let vertex_count = triangles
            .iter()
            .flat_map(|t| t.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        Self::new(vertex_count, triangles, boundary_allowed)
    }

    fn check_link(&self, v: usize) -> Result<(), SurfaceError> {
        let neighbours = &self.adjacency[v];
        let local = |w: usize| {
            neighbours
                .binary_search_by_key(&w, |&(n, _)| n)
                .expect("link vertex is a neighbour")
        };
        let mut uf = UnionFind::new(neighbours.len());
        for &t in &self.stars[v] {
            let tri = self.triangles[t];
            let others: Vec<usize> = tri.iter().copied().filter(|&w| w != v).collect();
            uf.union(local(others[0]), local(others[1]));
        }
        let link_edges = self.stars[v].len();
        let link_vertices = neighbours.len();
        let single_cycle = link_edges == link_vertices;
        let single_path = link_edges + 1 == link_vertices;
        if uf.components() == 1 && (single_cycle || single_path) {
            Ok(())
        } else {
            Err(SurfaceError::BadLink(v))
        }
    }

    fn triangle_components(&self) -> usize {
        let mut uf = UnionFind::new(self.triangles.len());
        for incident in &self.edge_triangles {
            if incident[1] != NO_TRIANGLE {
                uf.union(incident[0], incident[1]);
            }
        }
        uf.components()
    }

    /// Propagates the orientation of triangle 0 across edges; `None` on conflict.
    fn orient(&self) -> Option<Vec<Triangle>> {
        let mut oriented: Vec<Option<Triangle>> = vec![None; self.triangles.len()];
        oriented[0] = Some(self.triangles[0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let tri = oriented[t].expect("queued triangles are oriented");
            let raw_t = self.triangles[t];
            for corner in 0..3 {
                // Edges are indexed by the unflipped corner.
                let (x, y) = (raw_t[(corner + 1) % 3], raw_t[(corner + 2) % 3]);
                let (a, b) = if contains_directed(&tri, x, y) {
                    (x, y)
                } else {
                    (y, x)
                };
                let e = self.triangle_edges[t][corner];
                let [t0, t1] = self.edge_triangles[e];
                let other = if t0 == t { t1 } else { t0 };
                if other == NO_TRIANGLE {
                    continue;
                }
                match oriented[other] {
                    Some(existing) => {
                        if contains_directed(&existing, a, b) {
                            return None;
                        }
                    }
                    None => {
                        let raw = self.triangles[other];
                        let fixed = if contains_directed(&raw, a, b) {
                            [raw[1], raw[0], raw[2]]
                        } else {
                            raw
                        };
                        oriented[other] = Some(fixed);
                        queue.push_back(other);
                    }
                }
            }
        }
        Some(
            oriented
                .into_iter()
                .map(|t| t.expect("surface is connected"))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of facets, `|T|`.
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> Triangle {
        self.triangles[t]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Triangles incident to edge `e` (one on boundary edges, otherwise two).
    pub fn edge_triangles(&self, e: usize) -> &[usize] {
        let incident = &self.edge_triangles[e];
        if incident[1] == NO_TRIANGLE {
            &incident[..1]
        } else {
            &incident[..]
        }
    }

    /// Edge ids opposite corners 0, 1, 2 of triangle `t`.
    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        self.triangle_edges[t]
    }

    /// `(neighbour, edge id)` pairs of `v`, ascending by neighbour.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let list = self.adjacency.get(a)?;
        list.binary_search_by_key(&b, |&(n, _)| n)
            .ok()
            .map(|i| list[i].1)
    }

    /// Triangles containing `v`, ascending.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    /// Link of `v` as the list of edges opposite `v` in its star.
    pub fn link(&self, v: usize) -> Vec<[usize; 2]> {
        self.stars[v]
            .iter()
            .map(|&t| {
                let tri = self.triangles[t];
                let i = tri
                    .iter()
                    .position(|&w| w == v)
                    .expect("star triangle contains v");
                [tri[(i + 1) % 3], tri[(i + 2) % 3]]
            })
            .collect()
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_triangles[e][1] == NO_TRIANGLE
    }

    pub fn is_closed(&self) -> bool {
        self.edge_triangles.iter().all(|t| t[1] != NO_TRIANGLE)
    }

    pub fn boundary_allowed(&self) -> bool {
        self.boundary_allowed
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    /// Triangles reordered to a consistent orientation, if one exists.
    pub fn oriented_triangles(&self) -> Option<&[Triangle]> {
        self.orientation.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Genus of a closed orientable surface.
    pub fn genus(&self) -> Option<usize> {
        if !self.is_closed() || !self.is_orientable() {
            return None;
        }
        let chi = self.euler_characteristic();
        usize::try_from((2 - chi) / 2).ok()
    }

    pub fn topology_invariants(&self) -> TopologyInvariants {
        TopologyInvariants {
            vertices: self.vertex_count,
            edges: self.edges.len(),
            facets: self.triangles.len(),
            euler_characteristic: self.euler_characteristic(),
            orientable: self.is_orientable(),
            boundary_components: self.boundary_components().len(),
            genus: self.genus(),
        }
    }

    /// Boundary circles in canonical form, sorted.
    pub fn boundary_components(&self) -> Vec<EdgeLoop> {
        let mut on_boundary = vec![Vec::new(); self.vertex_count];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if self.is_boundary_edge(e) {
                on_boundary[a].push(b);
                on_boundary[b].push(a);
            }
        }
        let mut visited = vec![false; self.vertex_count];
        let mut loops = Vec::new();
        for start in 0..self.vertex_count {
            if visited[start] || on_boundary[start].is_empty() {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut prev = start;
            let mut current = on_boundary[start][0];
            while current != start {
                visited[current] = true;
                cycle.push(current);
                let next = on_boundary[current]
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("boundary vertices have two boundary neighbours");
                prev = current;
                current = next;
            }
            loops.push(EdgeLoop::from_vertices_unchecked(cycle).canonical());
        }
        loops.sort();
        loops
    }

    /// True when `other` equals `self` after relabelling vertex `v` as `map[v]`.
    pub fn is_isomorphic_via(&self, other: &TriangulatedSurface, map: &[usize]) -> bool {
        if self.vertex_count != other.vertex_count
            || self.triangles.len() != other.triangles.len()
            || map.len() != self.vertex_count
        {
            return false;
        }
        let mut seen = vec![false; other.vertex_count];
        for &m in map {
            if m >= other.vertex_count || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        let mut mine: Vec<Triangle> = self
            .triangles
            .iter()
            .map(|t| sorted3([map[t[0]], map[t[1]], map[t[2]]]))
            .collect();
        let mut theirs: Vec<Triangle> = other.triangles.iter().map(|&t| sorted3(t)).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs
    }

    /// Vertex sets of all triangles, sorted; an order-insensitive identity.
    pub fn sorted_triangle_set(&self) -> Vec<Triangle> {
        let mut all: Vec<Triangle> = self.triangles.iter().map(|&t| sorted3(t)).collect();
        all.sort_unstable();
        all
    }
}

pub(crate) fn sorted3(mut t: Triangle) -> Triangle {
    t.sort_unstable();
    t
}

fn contains_directed(tri: &Triangle, a: usize, b: usize) -> bool {
    (0..3).any(|i| tri[i] == a && tri[(i + 1) % 3] == b)
}

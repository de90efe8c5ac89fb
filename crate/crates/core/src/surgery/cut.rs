//! Cutting a closed surface along a simple loop.

use crate::complex::union_find::UnionFind;
use crate::complex::{EdgeLoop, Triangle, TriangulatedSurface};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("surface must be closed")]
    NotClosed,
    #[error("loop is not simple")]
    NotSimple,
    #[error("loop has length {0}; cutting needs at least 3")]
    TooShort(usize),
    #[error("({0}, {1}) is not an edge of the surface")]
    EdgeNotInSurface(usize, usize),
}

/// The surface after cutting, before any validation of the pieces.
#[derive(Debug, Clone)]
pub(crate) struct Split {
    pub vertex_count: usize,
    /// One triangle per input triangle, in the same order.
    pub triangles: Vec<Triangle>,
    /// Loop vertices on the first side keep their ids.
    pub copy_a: Vec<usize>,
    /// Loop vertices on the second side, numbered `V + i`.
    pub copy_b: Vec<usize>,
    pub component_of: Vec<usize>,
    pub components: usize,
}

#[derive(Debug, Clone)]
pub(crate) enum SplitOutcome {
    /// The loop has a single side (a Möbius band neighbourhood).
    OneSided,
    TwoSided(Split),
}

/// Duplicates the vertices of `p`, relabelling corners on one side.
///
/// Each loop vertex has its star split into two fans by the two loop edges
/// through it. Fans are assigned sides by walking the loop: the two triangles
/// on a loop edge lie on opposite sides, and a triangle keeps its side at
/// both ends of the edge. Triangles use the surface orientation witness when
/// it exists, so the cut pieces stay consistently oriented.
pub(crate) fn split_along(s: &TriangulatedSurface, p: &EdgeLoop) -> Result<SplitOutcome, CutError> {
    if !s.is_closed() {
        return Err(CutError::NotClosed);
    }
    let len = p.len();
    if len < 3 {
        return Err(CutError::TooShort(len));
    }
    if !p.is_simple() {
        return Err(CutError::NotSimple);
    }
    let verts = p.vertices();
    let mut loop_edges = Vec::with_capacity(len);
    for (a, b) in p.steps() {
        loop_edges.push(
            s.edge_between(a, b)
                .ok_or(CutError::EdgeNotInSurface(a, b))?,
        );
    }
    let v_count = s.vertex_count();
    let mut position = vec![usize::MAX; v_count];
    for (i, &v) in verts.iter().enumerate() {
        position[v] = i;
    }
    let is_loop_edge = |a: usize, b: usize| {
        let (i, j) = (position[a], position[b]);
        i != usize::MAX && j != usize::MAX && ((i + 1) % len == j || (j + 1) % len == i)
    };

    // fan[i][k] = class (0 or 1) of the k-th star triangle of loop vertex i.
    let mut fan: Vec<Vec<u8>> = Vec::with_capacity(len);
    for &v in verts {
        let star = s.star(v);
        let local = |t: usize| star.binary_search(&t).expect("triangle is in the star");
        let mut uf = UnionFind::new(star.len());
        for &(w, e) in s.neighbours(v) {
            if is_loop_edge(v, w) {
                continue;
            }
            let ts = s.edge_triangles(e);
            uf.union(local(ts[0]), local(ts[1]));
        }
        debug_assert_eq!(
            uf.components(),
            2,
            "two loop edges split a link cycle in two"
        );
        let first_root = uf.find(0);
        fan.push(
            (0..star.len())
                .map(|k| u8::from(uf.find(k) != first_root))
                .collect(),
        );
    }
    let class_of = |i: usize, t: usize| -> usize {
        let star = s.star(verts[i]);
        fan[i][star.binary_search(&t).expect("triangle is in the star")] as usize
    };

    // side[i][class] = true when that fan is relabelled onto the second copy.
    let mut side: Vec<[Option<bool>; 2]> = vec![[None; 2]; len];
    for i in 0..len {
        let ts = s.edge_triangles(loop_edges[i]);
        let (t0, t1) = (ts[0], ts[1]);
        let next = (i + 1) % len;
        if i == 0 {
            side[0][class_of(0, t0)] = Some(false);
            side[0][class_of(0, t1)] = Some(true);
        }
        let s0 = side[i][class_of(i, t0)].expect("sides at the current vertex are known");
        for (t, value) in [(t0, s0), (t1, !s0)] {
            let slot = &mut side[next][class_of(next, t)];
            match *slot {
                Some(existing) if existing != value => return Ok(SplitOutcome::OneSided),
                _ => *slot = Some(value),
            }
        }
    }

    let source = s.oriented_triangles().unwrap_or(s.triangles());
    let triangles: Vec<Triangle> = source
        .iter()
        .enumerate()
        .map(|(t, tri)| {
            tri.map(|v| {
                let i = position[v];
                if i == usize::MAX {
                    v
                } else if side[i][class_of(i, t)] == Some(true) {
                    v_count + i
                } else {
                    v
                }
            })
        })
        .collect();

    let mut sides: Vec<([usize; 2], usize)> = Vec::with_capacity(triangles.len() * 3);
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            sides.push(([a.min(b), a.max(b)], t));
        }
    }
    sides.sort_unstable();
    let mut uf = UnionFind::new(triangles.len());
    for w in sides.windows(2) {
        if w[0].0 == w[1].0 {
            uf.union(w[0].1, w[1].1);
        }
    }
    let mut label = vec![usize::MAX; triangles.len()];
    let mut component_of = Vec::with_capacity(triangles.len());
    let mut components = 0;
    for t in 0..triangles.len() {
        let root = uf.find(t);
        if label[root] == usize::MAX {
            label[root] = components;
            components += 1;
        }
        component_of.push(label[root]);
    }

    Ok(SplitOutcome::TwoSided(Split {
        vertex_count: v_count + len,
        triangles,
        copy_a: verts.to_vec(),
        copy_b: (v_count..v_count + len).collect(),
        component_of,
        components,
    }))
}

impl Split {
    /// Euler characteristic of each component of the cut surface.
    pub(crate) fn component_euler_characteristics(&self) -> Vec<i64> {
        let mut vertices: Vec<Vec<usize>> = vec![Vec::new(); self.components];
        let mut edges: Vec<Vec<[usize; 2]>> = vec![Vec::new(); self.components];
        let mut faces = vec![0i64; self.components];
        for (t, tri) in self.triangles.iter().enumerate() {
            let c = self.component_of[t];
            faces[c] += 1;
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                vertices[c].push(a);
                edges[c].push([a.min(b), a.max(b)]);
            }
        }
        (0..self.components)
            .map(|c| {
                vertices[c].sort_unstable();
                vertices[c].dedup();
                edges[c].sort_unstable();
                edges[c].dedup();
                vertices[c].len() as i64 - edges[c].len() as i64 + faces[c]
            })
            .collect()
    }
}

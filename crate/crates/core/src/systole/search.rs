//! Exact shortest nontrivial loops.
//!
//! Both searches share one candidate family: for every source vertex `v`, a
//! breadth-first tree from `v` (neighbours in ascending id order), and for
//! every non-tree edge `(x, y)` the closed walk `v -> x -> y -> v` through tree
//! paths. Some shortest nontrivial loop always has this form, so the minimum
//! over all sources is exact.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::complex::{EdgeLoop, TriangulatedSurface};
use crate::surgery::cut::{split_along, CutError, SplitOutcome};

use super::homology::Z2HomologyBasis;
use super::SystoleError;

/// Length and a realising loop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Systole {
    pub length: usize,
    pub cycle: EdgeLoop,
}

struct ShortestPathTree {
    dist: Vec<u32>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    order: Vec<usize>,
}

impl ShortestPathTree {
    fn new(s: &TriangulatedSurface, source: usize) -> Self {
        let n = s.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in s.neighbours(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    queue.push_back(w);
                }
            }
        }
        ShortestPathTree {
            dist,
            parent,
            parent_edge,
            order,
        }
    }

    fn is_tree_edge(&self, e: usize, [a, b]: [usize; 2]) -> bool {
        self.parent_edge[a] == e || self.parent_edge[b] == e
    }

    fn path_to_root(&self, mut x: usize) -> Vec<usize> {
        let mut path = vec![x];
        while self.parent[x] != usize::MAX {
            x = self.parent[x];
            path.push(x);
        }
        path
    }

    /// `root -> x`, the edge `(x, y)`, then `y -> root`, as a cyclic sequence.
    fn based_walk(&self, x: usize, y: usize) -> Vec<usize> {
        let mut walk = self.path_to_root(x);
        walk.reverse();
        let mut back = self.path_to_root(y);
        back.pop();
        walk.extend(back);
        walk
    }

    /// The based walk with the shared stem removed: a simple cycle through
    /// the lowest common ancestor of `x` and `y`.
    fn core_cycle(&self, x: usize, y: usize) -> Vec<usize> {
        let mut px = self.path_to_root(x);
        let mut py = self.path_to_root(y);
        while px.len() >= 2 && py.len() >= 2 && px[px.len() - 2] == py[py.len() - 2] {
            px.pop();
            py.pop();
        }
        px.reverse();
        py.pop();
        px.extend(py);
        px
    }
}

/// Shortest closed walk with nonzero Z2 class (`Sys^H_T`).
pub fn homological_systole(s: &TriangulatedSurface) -> Result<Systole, SystoleError> {
    let basis = Z2HomologyBasis::new(s)?;
    homological_systole_with(&basis)
}

pub fn homological_systole_with(basis: &Z2HomologyBasis<'_>) -> Result<Systole, SystoleError> {
    let s = basis.surface();
    if basis.rank() == 0 {
        return Err(SystoleError::GenusZero);
    }
    let words = basis.rank().div_ceil(64);
    let mut edge_words = vec![0u64; s.edge_count() * words];
    for e in 0..s.edge_count() {
        edge_words[e * words..(e + 1) * words].copy_from_slice(basis.edge_signature(e).words());
    }

    let best_from = |source: usize| -> Option<Systole> {
        let tree = ShortestPathTree::new(s, source);
        let mut prefix = vec![0u64; s.vertex_count() * words];
        for &v in tree.order.iter().skip(1) {
            let (p, e) = (tree.parent[v], tree.parent_edge[v]);
            for k in 0..words {
                prefix[v * words + k] = prefix[p * words + k] ^ edge_words[e * words + k];
            }
        }
        let mut best_len = usize::MAX;
        let mut ties = Vec::new();
        for (e, &[x, y]) in s.edges().iter().enumerate() {
            if tree.is_tree_edge(e, [x, y]) {
                continue;
            }
            let len = (tree.dist[x] + tree.dist[y] + 1) as usize;
            if len > best_len {
                continue;
            }
            let nontrivial = (0..words).any(|k| {
                prefix[x * words + k] ^ prefix[y * words + k] ^ edge_words[e * words + k] != 0
            });
            if !nontrivial {
                continue;
            }
            if len < best_len {
                best_len = len;
                ties.clear();
            }
            ties.push((x, y));
        }
        ties.into_iter()
            .map(|(x, y)| {
                let walk = EdgeLoop::from_vertices_unchecked(tree.based_walk(x, y));
                let cycle = shorten_to_simple(basis, &walk)
                    .expect("candidate has nonzero class")
                    .canonical();
                Systole {
                    length: cycle.len(),
                    cycle,
                }
            })
            .min()
    };

    (0..s.vertex_count())
        .into_par_iter()
        .filter_map(best_from)
        .min()
        .ok_or(SystoleError::GenusZero)
}

/// Shortest non-contractible closed walk (`Sys_T`).
///
/// For a fixed source, the non-tree edges form a graph on the triangles
/// (the dual graph minus tree edges). A candidate loop is contractible
/// exactly when its edge lies outside the 2-core of that graph, i.e. in a
/// pendant tree of triangles, which is then the disk the loop bounds.
pub fn homotopy_systole(s: &TriangulatedSurface) -> Result<Systole, SystoleError> {
    if !s.is_closed() {
        return Err(SystoleError::NotClosed);
    }
    let best_from = |source: usize| -> Option<Systole> {
        let tree = ShortestPathTree::new(s, source);
        let live = non_contractible_candidates(s, &tree);
        let mut best_len = usize::MAX;
        let mut ties = Vec::new();
        for (e, &[x, y]) in s.edges().iter().enumerate() {
            if !live[e] {
                continue;
            }
            let len = (tree.dist[x] + tree.dist[y] + 1) as usize;
            if len < best_len {
                best_len = len;
                ties.clear();
            }
            if len == best_len {
                ties.push((x, y));
            }
        }
        ties.into_iter()
            .map(|(x, y)| {
                let cycle = EdgeLoop::from_vertices_unchecked(tree.core_cycle(x, y)).canonical();
                Systole {
                    length: cycle.len(),
                    cycle,
                }
            })
            .min()
    };
    let best = (0..s.vertex_count())
        .into_par_iter()
        .filter_map(best_from)
        .min()
        .ok_or(SystoleError::GenusZero)?;
    debug_assert!(!is_contractible(s, &best.cycle).unwrap_or(true));
    Ok(best)
}

/// Marks non-tree edges whose candidate loop is not contractible.
fn non_contractible_candidates(s: &TriangulatedSurface, tree: &ShortestPathTree) -> Vec<bool> {
    let mut live: Vec<bool> = s
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &ends)| !tree.is_tree_edge(e, ends))
        .collect();
    let mut degree: Vec<u32> = (0..s.triangle_count())
        .map(|t| s.triangle_edges(t).iter().filter(|&&e| live[e]).count() as u32)
        .collect();
    let mut queue: Vec<usize> = (0..s.triangle_count())
        .filter(|&t| degree[t] == 1)
        .collect();
    while let Some(t) = queue.pop() {
        if degree[t] != 1 {
            continue;
        }
        let e = s
            .triangle_edges(t)
            .into_iter()
            .find(|&e| live[e])
            .expect("degree-one triangle has a live edge");
        live[e] = false;
        degree[t] = 0;
        for &u in s.edge_triangles(e) {
            if u != t {
                degree[u] -= 1;
                if degree[u] == 1 {
                    queue.push(u);
                }
            }
        }
    }
    live
}

/// Splits `p` at repeated vertices, keeping a lobe with nonzero class, until
/// the walk is simple. The result is never longer than `p`.
pub fn shorten_to_simple(
    basis: &Z2HomologyBasis<'_>,
    p: &EdgeLoop,
) -> Result<EdgeLoop, SystoleError> {
    if basis.cycle_signature(p)?.is_zero() {
        return Err(SystoleError::TrivialClass);
    }
    let mut walk = p.vertices().to_vec();
    loop {
        let Some((i, j)) = first_repeat(&walk) else {
            return Ok(EdgeLoop::from_vertices_unchecked(walk));
        };
        let lobe: Vec<usize> = walk[i..j].to_vec();
        if !basis.walk_signature(&lobe).is_zero() {
            walk = lobe;
        } else {
            walk.drain(i..j);
        }
    }
}

fn first_repeat(walk: &[usize]) -> Option<(usize, usize)> {
    let mut last_seen = std::collections::HashMap::new();
    for (j, &v) in walk.iter().enumerate() {
        if let Some(&i) = last_seen.get(&v) {
            return Some((i, j));
        }
        last_seen.insert(v, j);
    }
    None
}

fn cut_for_test(s: &TriangulatedSurface, p: &EdgeLoop) -> Result<SplitOutcome, SystoleError> {
    split_along(s, p).map_err(|e| match e {
        CutError::NotSimple => SystoleError::NotSimple,
        CutError::NotClosed => SystoleError::NotClosed,
        CutError::EdgeNotInSurface(a, b) => SystoleError::EdgeNotInSurface(a, b),
        CutError::TooShort(n) => SystoleError::TooShort(n),
    })
}

/// Whether cutting along the simple loop `p` leaves the surface connected.
pub fn is_nonseparating(s: &TriangulatedSurface, p: &EdgeLoop) -> Result<bool, SystoleError> {
    Ok(match cut_for_test(s, p)? {
        SplitOutcome::OneSided => true,
        SplitOutcome::TwoSided(split) => split.components == 1,
    })
}

/// Whether the simple loop `p` bounds a disk: the cut disconnects the
/// surface and one piece has Euler characteristic 1.
pub fn is_contractible(s: &TriangulatedSurface, p: &EdgeLoop) -> Result<bool, SystoleError> {
    Ok(match cut_for_test(s, p)? {
        SplitOutcome::OneSided => false,
        SplitOutcome::TwoSided(split) => {
            split.components > 1 && split.component_euler_characteristics().contains(&1)
        }
    })
}

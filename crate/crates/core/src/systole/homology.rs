//! Z2 homology classes of closed walks via a tree-cotree decomposition.

use std::collections::VecDeque;

use crate::complex::{EdgeLoop, TriangulatedSurface};
use crate::gf2::{self, Gf2Vector};

use super::SystoleError;

/// Edge signatures whose XOR along a closed walk is its Z2 homology class.
///
/// Built from a breadth-first spanning tree of the 1-skeleton and a
/// spanning tree of the dual graph on the remaining edges. The `rank`
/// leftover edges each get a unit vector; tree edges get zero; dual-tree
/// edges are solved so every face boundary XORs to zero.
#[derive(Debug, Clone)]
pub struct Z2HomologyBasis<'s> {
    surface: &'s TriangulatedSurface,
    rank: usize,
    signatures: Vec<Gf2Vector>,
    in_tree: Vec<bool>,
    generators: Vec<usize>,
}

impl<'s> Z2HomologyBasis<'s> {
    pub fn new(surface: &'s TriangulatedSurface) -> Result<Self, SystoleError> {
        if !surface.is_closed() {
            return Err(SystoleError::NotClosed);
        }
        let edge_count = surface.edge_count();

        let mut in_tree = vec![false; edge_count];
        let mut seen = vec![false; surface.vertex_count()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in surface.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }

        // Dual spanning tree over triangles, avoiding primal tree edges.
        let triangle_count = surface.triangle_count();
        let mut in_cotree = vec![false; edge_count];
        let mut parent_edge = vec![usize::MAX; triangle_count];
        let mut reached = vec![false; triangle_count];
        let mut order = Vec::with_capacity(triangle_count);
        reached[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            order.push(t);
            let mut sides = surface.triangle_edges(t);
            sides.sort_unstable();
            for e in sides {
                if in_tree[e] {
                    continue;
                }
                for &u in surface.edge_triangles(e) {
                    if !reached[u] {
                        reached[u] = true;
                        in_cotree[e] = true;
                        parent_edge[u] = e;
                        queue.push_back(u);
                    }
                }
            }
        }

        let generators: Vec<usize> = (0..edge_count)
            .filter(|&e| !in_tree[e] && !in_cotree[e])
            .collect();
        let rank = generators.len();
        let mut signatures = vec![Gf2Vector::zeros(rank); edge_count];
        for (k, &e) in generators.iter().enumerate() {
            signatures[e] = Gf2Vector::unit(rank, k);
        }
        for &t in order.iter().skip(1).rev() {
            let up = parent_edge[t];
            let mut sum = Gf2Vector::zeros(rank);
            for e in surface.triangle_edges(t) {
                if e != up {
                    sum.xor_assign(&signatures[e]);
                }
            }
            signatures[up] = sum;
        }

        let basis = Z2HomologyBasis {
            surface,
            rank,
            signatures,
            in_tree,
            generators,
        };
        debug_assert!((0..triangle_count).all(|t| basis.face_signature(t).is_zero()));
        debug_assert_eq!(gf2::rank(&basis.generator_classes()), rank);
        Ok(basis)
    }

    pub fn surface(&self) -> &'s TriangulatedSurface {
        self.surface
    }

    /// Dimension of H1(S; Z2); `2g` for a closed orientable genus-`g` surface.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edge_signature(&self, e: usize) -> &Gf2Vector {
        &self.signatures[e]
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Edges outside both spanning trees; one per basis class.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn face_signature(&self, t: usize) -> Gf2Vector {
        let mut sum = Gf2Vector::zeros(self.rank);
        for e in self.surface.triangle_edges(t) {
            sum.xor_assign(&self.signatures[e]);
        }
        sum
    }

    fn generator_classes(&self) -> Vec<Gf2Vector> {
        self.generators
            .iter()
            .map(|&e| self.signatures[e].clone())
            .collect()
    }

    /// XOR of the edge signatures along `p`; zero iff `p` is null-homologous.
    pub fn cycle_signature(&self, p: &EdgeLoop) -> Result<Gf2Vector, SystoleError> {
        let mut sum = Gf2Vector::zeros(self.rank);
        for (a, b) in p.steps() {
            let e = self
                .surface
                .edge_between(a, b)
                .ok_or(SystoleError::EdgeNotInSurface(a, b))?;
            sum.xor_assign(&self.signatures[e]);
        }
        Ok(sum)
    }

    pub(crate) fn walk_signature(&self, walk: &[usize]) -> Gf2Vector {
        let mut sum = Gf2Vector::zeros(self.rank);
        let n = walk.len();
        for i in 0..n {
            let e = self
                .surface
                .edge_between(walk[i], walk[(i + 1) % n])
                .expect("walk steps are edges");
            sum.xor_assign(&self.signatures[e]);
        }
        sum
    }
}

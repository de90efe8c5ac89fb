use super::surface::TriangulatedSurface;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("an edge loop needs at least two vertices, got {0}")]
    TooShort(usize),
    #[error("({0}, {1}) is not an edge of the surface")]
    EdgeNotInSurface(usize, usize),
}

/// A closed walk in the 1-skeleton, stored as its cyclic vertex sequence.
///
/// Consecutive vertices (and last to first) are joined by edges. Walks may
/// revisit vertices; use [`EdgeLoop::is_simple`] to test for a simple cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct EdgeLoop {
    vertices: Vec<usize>,
}

impl EdgeLoop {
    /// Checks every step of the walk against `surface`.
    pub fn new(surface: &TriangulatedSurface, vertices: Vec<usize>) -> Result<Self, LoopError> {
        let candidate = EdgeLoop { vertices };
        candidate.validate(surface)?;
        Ok(candidate)
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<usize>) -> Self {
        EdgeLoop { vertices }
    }

    pub fn validate(&self, surface: &TriangulatedSurface) -> Result<(), LoopError> {
        if self.vertices.len() < 2 {
            return Err(LoopError::TooShort(self.vertices.len()));
        }
        for (a, b) in self.steps() {
            if surface.edge_between(a, b).is_none() {
                return Err(LoopError::EdgeNotInSurface(a, b));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    /// Number of edges traversed, `l_T(p)`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, including the closing step.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Edge ids along the walk. Panics if a step is not an edge of `surface`.
    pub fn edge_ids<'a>(
        &'a self,
        surface: &'a TriangulatedSurface,
    ) -> impl Iterator<Item = usize> + 'a {
        self.steps()
            .map(|(a, b)| surface.edge_between(a, b).expect("loop steps are edges"))
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reversed(&self) -> EdgeLoop {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        EdgeLoop { vertices }
    }

    /// Rotation starting at the smallest vertex, in the direction whose second
    /// vertex is smaller. For non-simple walks every occurrence of the smallest
    /// vertex is tried and the lexicographically least sequence wins.
    pub fn canonical(&self) -> EdgeLoop {
        let n = self.vertices.len();
        if n == 0 {
            return self.clone();
        }
        let min = *self.vertices.iter().min().expect("non-empty");
        let mut best: Option<Vec<usize>> = None;
        for i in (0..n).filter(|&i| self.vertices[i] == min) {
            let forward: Vec<usize> = (0..n).map(|k| self.vertices[(i + k) % n]).collect();
            let backward: Vec<usize> = (0..n).map(|k| self.vertices[(i + n - k) % n]).collect();
            for candidate in [forward, backward] {
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        EdgeLoop {
            vertices: best.expect("at least one rotation"),
        }
    }
}

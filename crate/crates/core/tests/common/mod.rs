//! Brute-force oracles shared by the integration tests. None of these go
//! through the library's search or homology code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use systolica::TriangulatedSurface;

pub fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub fn adjacency(s: &TriangulatedSurface) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); s.vertex_count()];
    for t in s.triangles() {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj
}

/// Every simple cycle of exactly `len` edges, each listed once, starting
/// at its smallest vertex.
pub fn simple_cycles(s: &TriangulatedSurface, len: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(s);
    let mut out = Vec::new();
    for start in 0..s.vertex_count() {
        let mut path = vec![start];
        let mut on_path = vec![false; s.vertex_count()];
        on_path[start] = true;
        extend(&adj, len, &mut path, &mut on_path, &mut out);
    }
    out
}

fn extend(
    adj: &[BTreeSet<usize>],
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        // Each cycle is seen in two directions; keep the one whose second
        // vertex is smaller than its last.
        if adj[last].contains(&start) && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    for &w in &adj[last] {
        if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend(adj, len, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Triangles grouped by connectivity across edges not on the cycle.
pub fn sides(s: &TriangulatedSurface, cycle: &[usize]) -> Vec<Vec<usize>> {
    let n = cycle.len();
    let cut: BTreeSet<(usize, usize)> = (0..n)
        .map(|i| edge_key(cycle[i], cycle[(i + 1) % n]))
        .collect();
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, tri) in s.triangles().iter().enumerate() {
        for i in 0..3 {
            by_edge
                .entry(edge_key(tri[i], tri[(i + 1) % 3]))
                .or_default()
                .push(t);
        }
    }
    let mut comp = vec![usize::MAX; s.triangle_count()];
    let mut groups = Vec::new();
    for seed in 0..s.triangle_count() {
        if comp[seed] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut group = vec![seed];
        comp[seed] = id;
        let mut stack = vec![seed];
        while let Some(t) = stack.pop() {
            let tri = s.triangle(t);
            for i in 0..3 {
                let key = edge_key(tri[i], tri[(i + 1) % 3]);
                if cut.contains(&key) {
                    continue;
                }
                for &u in &by_edge[&key] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        group.push(u);
                        stack.push(u);
                    }
                }
            }
        }
        groups.push(group);
    }
    groups
}

/// `V - E + F` of a set of triangles.
pub fn euler_characteristic(s: &TriangulatedSurface, triangles: &[usize]) -> i64 {
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    for &t in triangles {
        let tri = s.triangle(t);
        for i in 0..3 {
            vs.insert(tri[i]);
            es.insert(edge_key(tri[i], tri[(i + 1) % 3]));
        }
    }
    vs.len() as i64 - es.len() as i64 + triangles.len() as i64
}

pub fn oracle_nonseparating(s: &TriangulatedSurface, cycle: &[usize]) -> bool {
    sides(s, cycle).len() == 1
}

/// A simple loop bounds a disk exactly when it separates and one side has
/// Euler characteristic 1.
pub fn oracle_contractible(s: &TriangulatedSurface, cycle: &[usize]) -> bool {
    let groups = sides(s, cycle);
    groups.len() == 2 && groups.iter().any(|g| euler_characteristic(s, g) == 1)
}

/// Shortest simple cycle satisfying `pred`, by increasing length, up to
/// `max_len`.
pub fn shortest_simple_cycle(
    s: &TriangulatedSurface,
    max_len: usize,
    pred: impl Fn(&[usize]) -> bool,
) -> Option<usize> {
    (3..=max_len).find(|&len| simple_cycles(s, len).iter().any(|c| pred(c)))
}

/// Rank of a set of GF(2) rows by dense Gaussian elimination over `bool`.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H1(S; Z2) = (E - V + 1) - rank ∂₂` for a closed connected surface.
pub fn oracle_homology_rank(s: &TriangulatedSurface) -> usize {
    let mut index = HashMap::new();
    for t in s.triangles() {
        for i in 0..3 {
            let k = edge_key(t[i], t[(i + 1) % 3]);
            let next = index.len();
            index.entry(k).or_insert(next);
        }
    }
    let e = index.len();
    let rows: Vec<Vec<bool>> = s
        .triangles()
        .iter()
        .map(|t| {
            let mut row = vec![false; e];
            for i in 0..3 {
                row[index[&edge_key(t[i], t[(i + 1) % 3])]] = true;
            }
            row
        })
        .collect();
    (e + 1 - s.vertex_count()) - dense_rank(rows)
}

/// Tries all `2^F` choices of triangle orientation.
pub fn oracle_orientable(s: &TriangulatedSurface) -> bool {
    let f = s.triangle_count();
    assert!(f <= 20, "brute force over 2^{f} assignments");
    (0u32..1 << f).any(|mask| {
        let mut directed = BTreeSet::new();
        s.triangles().iter().enumerate().all(|(t, tri)| {
            let tri = if mask & (1 << t) != 0 {
                [tri[1], tri[0], tri[2]]
            } else {
                *tri
            };
            (0..3).all(|i| directed.insert((tri[i], tri[(i + 1) % 3])))
        })
    })
}

/// A random simple cycle: a self-avoiding walk from a random vertex that
/// closes as soon as it may, with probability `close` per step.
pub fn random_simple_cycle<R: Rng>(s: &TriangulatedSurface, close: f64, rng: &mut R) -> Vec<usize> {
    let adj: Vec<Vec<usize>> = adjacency(s)
        .into_iter()
        .map(|n| n.into_iter().collect())
        .collect();
    loop {
        let start = rng.gen_range(0..s.vertex_count());
        let mut path = vec![start];
        let mut on_path = vec![false; s.vertex_count()];
        on_path[start] = true;
        loop {
            let last = *path.last().unwrap();
            if path.len() >= 3 && adj[last].contains(&start) && rng.gen_bool(close) {
                return path;
            }
            let free: Vec<usize> = adj[last].iter().copied().filter(|&w| !on_path[w]).collect();
            if free.is_empty() {
                break;
            }
            let w = free[rng.gen_range(0..free.len())];
            on_path[w] = true;
            path.push(w);
        }
    }
}

//! Deterministic graph families. Random families take an explicit seed and use
//! ChaCha8 so that output is stable across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a non-simple graph")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn complete(n: usize) -> Graph {
    build(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    )
}

/// Center 0, leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(
        a + b,
        (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect(),
    )
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, edges)
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, edges)
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Adds one random edge between consecutive components (in min-vertex order)
/// until the graph is connected. `cross_ok` filters admissible endpoints.
fn connect(g: Graph, rng: &mut ChaCha8Rng, cross_ok: impl Fn(Vertex, Vertex) -> bool) -> Graph {
    let comps = g.connected_components(None);
    if comps.len() <= 1 {
        return g;
    }
    let mut edges: Vec<_> = g.edges().collect();
    let mut joined = comps[0].to_vec();
    for comp in &comps[1..] {
        let here = comp.to_vec();
        let mut pairs: Vec<(Vertex, Vertex)> = joined
            .iter()
            .flat_map(|&u| here.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| cross_ok(u, v))
            .collect();
        if pairs.is_empty() {
            // no admissible pair; fall back to any pair
            pairs = joined
                .iter()
                .flat_map(|&u| here.iter().map(move |&v| (u, v)))
                .collect();
        }
        edges.push(*pairs.choose(rng).unwrap());
        joined.extend(here);
    }
    build(g.n(), edges)
}

/// G(n, p) patched into a connected graph by linking its components with
/// random edges.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let g = gnp(n, p, seed);
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    connect(g, &mut rng, |_, _| true)
}

/// Random bipartite graph: each vertex lands on side 0 or 1 uniformly, each
/// cross pair becomes an edge with probability `p`.
pub fn random_bipartite(n: usize, p: f64, seed: u64) -> Graph {
    random_bipartite_with_sides(n, p, seed).0
}

fn random_bipartite_with_sides(n: usize, p: f64, seed: u64) -> (Graph, Vec<bool>) {
    let mut rng = rng(seed);
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (build(n, edges), side)
}

/// Random bipartite graph made connected with cross-side links only. When all
/// vertices fall on one side, the side of vertex `n-1` is flipped first.
pub fn connected_bipartite(n: usize, p: f64, seed: u64) -> Graph {
    let (g, mut side) = random_bipartite_with_sides(n, p, seed);
    if n >= 2 && side.iter().all(|&s| s == side[0]) {
        side[n - 1] = !side[0];
    }
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    connect(g, &mut rng, |u, v| side[u] != side[v])
}

/// Random permutation of `0..n`, for relabelling tests.
pub fn permutation(n: usize, seed: u64) -> Vec<Vertex> {
    let mut p: Vec<_> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}

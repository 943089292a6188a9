#![allow(dead_code)]

use oddcolor::generators;
use oddcolor::Graph;
use rand::Rng;

pub const PROBS: [f64; 4] = [0.05, 0.1, 0.3, 0.6];

/// `count` connected G(n, p) graphs with n in [1, max_n], p cycling through
/// [`PROBS`]. Fully determined by `seed`.
pub fn random_connected(count: usize, max_n: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = generators::rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let p = PROBS[i % PROBS.len()];
            let gseed = rng.gen::<u64>();
            (
                format!("gnp(n={n}, p={p}, seed={gseed})"),
                generators::connected_gnp(n, p, gseed),
            )
        })
        .collect()
}

pub fn random_bipartite(count: usize, max_n: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = generators::rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let p = PROBS[i % PROBS.len()];
            let gseed = rng.gen::<u64>();
            (
                format!("bipartite(n={n}, p={p}, seed={gseed})"),
                generators::connected_bipartite(n, p, gseed),
            )
        })
        .collect()
}

pub fn named_small() -> Vec<(String, Graph)> {
    vec![
        ("C5".into(), generators::cycle(5)),
        ("C6".into(), generators::cycle(6)),
        ("K4".into(), generators::complete(4)),
        ("K5".into(), generators::complete(5)),
        ("Petersen".into(), generators::petersen()),
    ]
}

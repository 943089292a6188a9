//! Exhaustive ground truth for tiny graphs.
//!
//! An odd `K_t` expansion exists iff some 2-coloring of `V(G)` admits `t`
//! disjoint vertex sets, each connected through bichromatic edges, with a
//! monochromatic edge between every two of them. [`has_odd_expansion`]
//! enumerates the colorings (vertex 0 fixed to color 0, since swapping
//! colors changes nothing) and backtracks over connected sets as bitmasks.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_t: usize,
    /// Cap on backtracking nodes across all colorings.
    pub node_limit: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 9,
            max_t: 4,
            node_limit: 500_000_000,
        }
    }
}

/// Hard ceiling for the connector brute force.
pub const CONNECTOR_MAX_N: usize = 12;

/// Hard ceiling for the expansion search regardless of budget (bitmask width).
pub const EXPANSION_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, budget allows {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("t = {t} exceeds budget {max}")]
    TooLargeT { t: usize, max: usize },
    #[error("search exceeded {0} nodes")]
    NodeLimit(u64),
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("terminal {0} out of range")]
    TerminalOutOfRange(usize),
    #[error("terminals are not connected in the graph")]
    Unreachable,
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

/// Whether `set` is connected using edges from `adj`.
fn connected_in(set: u32, adj: &[u32]) -> bool {
    if set == 0 {
        return false;
    }
    let mut reach = set & set.wrapping_neg();
    let mut frontier = reach;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & set & !reach;
        reach |= fresh;
        frontier |= fresh;
    }
    reach == set
}

/// Exact test for an odd `K_t` expansion in `g`.
pub fn has_odd_expansion(
    g: &Graph,
    t: usize,
    budget: OracleBudget,
    mode: Parallelism,
) -> Result<bool, OracleError> {
    let n = g.n();
    if n > budget.max_n.min(EXPANSION_MAX_N) {
        return Err(OracleError::TooManyVertices {
            n,
            max: budget.max_n.min(EXPANSION_MAX_N),
        });
    }
    if t > budget.max_t {
        return Err(OracleError::TooLargeT {
            t,
            max: budget.max_t,
        });
    }
    if t == 0 {
        return Ok(true);
    }
    if t > n {
        return Ok(false);
    }
    let nbr = neighbor_masks(g);
    let nodes = AtomicU64::new(0);
    let blown = AtomicBool::new(false);
    let found = par::any(0..1u64 << (n - 1), mode, |half| {
        if blown.load(Ordering::Relaxed) {
            return false;
        }
        let color = (half as u32) << 1;
        let mut search = ColoringSearch::new(&nbr, color, t, budget.node_limit, &nodes);
        let hit = search.run();
        if search.blown {
            blown.store(true, Ordering::Relaxed);
        }
        hit
    });
    if found {
        Ok(true)
    } else if blown.load(Ordering::Relaxed) {
        Err(OracleError::NodeLimit(budget.node_limit))
    } else {
        Ok(false)
    }
}

struct ColoringSearch<'a> {
    t: usize,
    /// Connected sets grouped by their lowest vertex.
    by_min: Vec<Vec<(u32, u32)>>,
    limit: u64,
    nodes: &'a AtomicU64,
    blown: bool,
}

impl<'a> ColoringSearch<'a> {
    fn new(nbr: &[u32], color: u32, t: usize, limit: u64, nodes: &'a AtomicU64) -> Self {
        let n = nbr.len();
        let bichromatic: Vec<u32> = (0..n)
            .map(|v| {
                let other = if color >> v & 1 == 1 { !color } else { color };
                nbr[v] & other
            })
            .collect();
        let mono: Vec<u32> = (0..n).map(|v| nbr[v] & !bichromatic[v]).collect();
        let mut by_min = vec![Vec::new(); n];
        for set in 1u32..(1 << n) {
            if connected_in(set, &bichromatic) {
                let mut reach = 0;
                let mut rest = set;
                while rest != 0 {
                    reach |= mono[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                by_min[set.trailing_zeros() as usize].push((set, reach));
            }
        }
        ColoringSearch {
            t,
            by_min,
            limit,
            nodes,
            blown: false,
        }
    }

    fn run(&mut self) -> bool {
        let mut chosen = Vec::with_capacity(self.t);
        self.extend(0, 0, &mut chosen)
    }

    /// Adds sets with lowest vertex `>= from`, disjoint from `used`, each
    /// touching all of `chosen` through a monochromatic edge.
    fn extend(&mut self, from: usize, used: u32, chosen: &mut Vec<(u32, u32)>) -> bool {
        if chosen.len() == self.t {
            return true;
        }
        let n = self.by_min.len();
        let needed = self.t - chosen.len();
        for low in from..n {
            // every remaining set needs its own lowest vertex above `low`
            if n - low < needed {
                break;
            }
            if used >> low & 1 == 1 {
                continue;
            }
            for idx in 0..self.by_min[low].len() {
                let (set, reach) = self.by_min[low][idx];
                if set & used != 0 || !chosen.iter().all(|&(_, r)| r & set != 0) {
                    continue;
                }
                if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
                    self.blown = true;
                    return false;
                }
                chosen.push((set, reach));
                let hit = self.extend(low + 1, used | set, chosen);
                chosen.pop();
                if hit {
                    return true;
                }
                if self.blown {
                    return false;
                }
            }
        }
        false
    }
}

/// Minimum-size vertex superset of `terminals` inducing a connected
/// subgraph; the lexicographically smallest sorted list among ties.
pub fn min_connector_bruteforce(
    g: &Graph,
    terminals: &VertexSet,
) -> Result<VertexSet, OracleError> {
    let n = g.n();
    if n > CONNECTOR_MAX_N {
        return Err(OracleError::TooManyVertices {
            n,
            max: CONNECTOR_MAX_N,
        });
    }
    if terminals.is_empty() {
        return Err(OracleError::NoTerminals);
    }
    if let Some(v) = terminals.iter().find(|&v| v >= n) {
        return Err(OracleError::TerminalOutOfRange(v));
    }
    let nbr = neighbor_masks(g);
    let required = terminals.iter().fold(0u32, |m, v| m | (1 << v));
    let mut best: Option<Vec<usize>> = None;
    for set in 0u32..(1 << n) {
        if set & required != required || !connected_in(set, &nbr) {
            continue;
        }
        let list: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some(b) => (list.len(), &list) < (b.len(), b),
        };
        if better {
            best = Some(list);
        }
    }
    best.map(|b| b.into_iter().collect())
        .ok_or(OracleError::Unreachable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, path, petersen};

    fn odd(g: &Graph, t: usize) -> bool {
        has_odd_expansion(g, t, OracleBudget::default(), Parallelism::Sequential).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(odd(&cycle(5), 3));
        assert!(!odd(&cycle(6), 3));
        assert!(odd(&complete(4), 4));
        assert!(odd(&complete(3), 3));
        assert!(!odd(&complete(3), 4));
        assert!(!odd(&complete_bipartite(3, 3), 3));
        assert!(odd(&path(2), 2));
        assert!(!odd(&Graph::empty(3), 2));
        assert!(odd(&Graph::empty(1), 1));
    }

    #[test]
    fn petersen_with_raised_budget() {
        let budget = OracleBudget {
            max_n: 10,
            ..OracleBudget::default()
        };
        let p = petersen();
        assert!(has_odd_expansion(&p, 3, budget, Parallelism::Sequential).unwrap());
        assert!(has_odd_expansion(&p, 4, budget, Parallelism::Parallel).unwrap());
        assert_eq!(
            has_odd_expansion(&p, 3, OracleBudget::default(), Parallelism::Sequential),
            Err(OracleError::TooManyVertices { n: 10, max: 9 })
        );
    }

    #[test]
    fn budget_caps() {
        assert!(matches!(
            has_odd_expansion(
                &complete(5),
                5,
                OracleBudget::default(),
                Parallelism::Sequential
            ),
            Err(OracleError::TooLargeT { t: 5, max: 4 })
        ));
        let tiny = OracleBudget {
            node_limit: 1,
            ..OracleBudget::default()
        };
        assert_eq!(
            has_odd_expansion(&complete_bipartite(3, 3), 3, tiny, Parallelism::Sequential),
            Err(OracleError::NodeLimit(1))
        );
    }

    #[test]
    fn modes_agree() {
        for seed in 0..20 {
            let g = crate::generators::gnp(8, 0.4, seed);
            for t in 2..=4 {
                let b = OracleBudget::default();
                assert_eq!(
                    has_odd_expansion(&g, t, b, Parallelism::Sequential),
                    has_odd_expansion(&g, t, b, Parallelism::Parallel)
                );
            }
        }
    }

    #[test]
    fn connector_bruteforce() {
        assert_eq!(
            min_connector_bruteforce(&path(5), &VertexSet::from([0, 4])).unwrap(),
            VertexSet::full(5)
        );
        assert_eq!(
            min_connector_bruteforce(&cycle(6), &VertexSet::from([0, 3])).unwrap(),
            VertexSet::from([0, 1, 2, 3])
        );
        assert_eq!(
            min_connector_bruteforce(&cycle(6), &VertexSet::from([4])).unwrap(),
            VertexSet::from([4])
        );
        assert_eq!(
            min_connector_bruteforce(&Graph::empty(2), &VertexSet::from([0, 1])),
            Err(OracleError::Unreachable)
        );
        assert!(min_connector_bruteforce(&path(13), &VertexSet::from([0])).is_err());
    }
}

//! Parity spanners: a connected induced subgraph `H` covering a terminal set,
//! split into sides `A` and `B` such that
//!
//! 1. every component of `G[A]` and of `G[B]` has at most `ceil(|S|/2)`
//!    vertices,
//! 2. the edges of `H` running between `A` and `B` form a connected spanning
//!    subgraph of `H`,
//! 3. every vertex of the surrounding component that lies outside `H` but
//!    touches it has a neighbor in `A` and a neighbor in `B`.
//!
//! Construction runs in three stages. [`minimum_connector`] finds a
//! minimum-vertex connected superset of the terminals (exact node-weighted
//! Dreyfus–Wagner). [`bounded_bipartition`] splits it with bounded
//! monochromatic components. [`refine_triple`] then runs a local search
//! that strictly increases the number of `A`–`B` edges until (2) and (3)
//! hold.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::{Add, Sub};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Largest terminal set accepted by [`minimum_connector`].
pub const MAX_TERMINALS: usize = 12;

/// Search-node cap for [`bounded_bipartition`].
pub const BIPARTITION_NODE_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpannerError {
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("terminal {0} lies outside the component")]
    TerminalOutsideComponent(Vertex),
    #[error("{count} terminals exceed the budget of {max}")]
    TooManyTerminals { count: usize, max: usize },
    #[error("component does not induce a connected subgraph")]
    ComponentDisconnected,
    #[error("no bipartition with component bound {bound} exists for the given vertex set")]
    BipartitionNotFound { bound: usize },
    #[error("bipartition search exceeded {0} nodes")]
    BipartitionBudget(u64),
    #[error("internal: {0}")]
    Internal(String),
}

/// `ceil(k / 2)` for `k >= 1`.
pub fn half_ceil(k: usize) -> usize {
    k.div_ceil(2)
}

/// A connected induced subgraph `H` with a split into two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    #[serde(rename = "H")]
    pub h: VertexSet,
    #[serde(rename = "A")]
    pub side_a: VertexSet,
    #[serde(rename = "B")]
    pub side_b: VertexSet,
    #[serde(skip)]
    pub cross_edges: usize,
}

impl Triple {
    pub fn new(g: &Graph, side_a: VertexSet, side_b: VertexSet) -> Triple {
        let cross_edges = cross_edge_count(g, &side_a, &side_b);
        Triple {
            h: side_a.union(&side_b),
            side_a,
            side_b,
            cross_edges,
        }
    }
}

pub fn cross_edge_count(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    let in_b = b.mask(g.n());
    a.iter()
        .map(|u| g.neighbors(u).iter().filter(|&&w| in_b[w]).count())
        .sum()
}

/// Input to [`build_spanner`]: a connected component `C` of some host graph
/// and terminals `S ⊆ C`.
#[derive(Debug, Clone)]
pub struct SpannerRequest<'g> {
    pub host: &'g Graph,
    pub component: VertexSet,
    pub terminals: VertexSet,
}

impl<'g> SpannerRequest<'g> {
    pub fn new(
        host: &'g Graph,
        component: VertexSet,
        terminals: VertexSet,
    ) -> Result<Self, SpannerError> {
        if terminals.is_empty() {
            return Err(SpannerError::NoTerminals);
        }
        if let Some(v) = terminals.iter().find(|&v| !component.contains(v)) {
            return Err(SpannerError::TerminalOutsideComponent(v));
        }
        if !host.is_connected_set(&component) {
            return Err(SpannerError::ComponentDisconnected);
        }
        Ok(SpannerRequest {
            host,
            component,
            terminals,
        })
    }

    /// Component-size bound `ceil(|S| / 2)`.
    pub fn bound(&self) -> usize {
        half_ceil(self.terminals.len())
    }
}

// ---------------------------------------------------------------------------
// Minimum connector
// ---------------------------------------------------------------------------

/// Secondary key arithmetic for the connector DP. Vertex with local rank `i`
/// among `m` carries `2^(m-1-i)`; a larger key sum means a lexicographically
/// smaller sorted vertex list among sets of equal size.
trait Key: Clone + Ord + Add<Output = Self> + Sub<Output = Self> {
    fn rank_weight(rank: usize, m: usize) -> Self;
}

impl Key for u128 {
    fn rank_weight(rank: usize, m: usize) -> Self {
        1u128 << (m - 1 - rank)
    }
}

impl Key for BigUint {
    fn rank_weight(rank: usize, m: usize) -> Self {
        BigUint::from(1u8) << (m - 1 - rank)
    }
}

/// Ordered by size first, then by descending key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Cost<K> {
    size: u32,
    key: Reverse<K>,
}

impl<K: Key> Cost<K> {
    fn vertex(rank: usize, m: usize) -> Self {
        Cost {
            size: 1,
            key: Reverse(K::rank_weight(rank, m)),
        }
    }
    fn plus(&self, other: &Self) -> Self {
        Cost {
            size: self.size + other.size,
            key: Reverse(self.key.0.clone() + other.key.0.clone()),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        Cost {
            size: self.size - other.size,
            key: Reverse(self.key.0.clone() - other.key.0.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Back {
    Leaf,
    Merge(usize),
    Extend(usize),
}

/// Minimum-vertex set `W` with `terminals ⊆ W ⊆ component` inducing a
/// connected subgraph. Among all minimum sets, the one whose sorted vertex
/// list is lexicographically smallest is returned.
pub fn minimum_connector(
    host: &Graph,
    component: &VertexSet,
    terminals: &VertexSet,
) -> Result<VertexSet, SpannerError> {
    if terminals.is_empty() {
        return Err(SpannerError::NoTerminals);
    }
    if let Some(v) = terminals.iter().find(|&v| !component.contains(v)) {
        return Err(SpannerError::TerminalOutsideComponent(v));
    }
    if terminals.len() > MAX_TERMINALS {
        return Err(SpannerError::TooManyTerminals {
            count: terminals.len(),
            max: MAX_TERMINALS,
        });
    }
    if terminals.len() == 1 {
        return Ok(terminals.clone());
    }
    let (local, to_host) = host.induced_subgraph(component);
    let rank_of = |v: Vertex| to_host.binary_search(&v).unwrap();
    let local_terms: Vec<usize> = terminals.iter().map(rank_of).collect();
    let picked = if local.n() < 127 {
        connector_dp::<u128>(&local, &local_terms)
    } else {
        connector_dp::<BigUint>(&local, &local_terms)
    }
    .ok_or(SpannerError::ComponentDisconnected)?;
    Ok(picked.into_iter().map(|i| to_host[i]).collect())
}

/// Node-weighted Dreyfus–Wagner over terminal subsets. Returns local vertex
/// indices of the optimal tree, or `None` if the terminals are not connected.
fn connector_dp<K: Key>(g: &Graph, terms: &[usize]) -> Option<Vec<usize>> {
    let m = g.n();
    let k = terms.len();
    let full = (1usize << k) - 1;
    let weight: Vec<Cost<K>> = (0..m).map(|v| Cost::vertex(v, m)).collect();
    let mut dp: Vec<Vec<Option<Cost<K>>>> = vec![vec![None; m]; full + 1];
    let mut back = vec![vec![Back::Leaf; m]; full + 1];

    for mask in 1..=full {
        if mask.is_power_of_two() {
            let t = terms[mask.trailing_zeros() as usize];
            dp[mask][t] = Some(weight[t].clone());
        } else {
            for v in 0..m {
                // each unordered split once: `sub` holds the lowest set bit
                let low = mask & mask.wrapping_neg();
                let rest = mask ^ low;
                let mut sub = rest;
                loop {
                    let s1 = sub | low;
                    let s2 = mask ^ s1;
                    if s2 != 0 {
                        if let (Some(a), Some(b)) = (&dp[s1][v], &dp[s2][v]) {
                            let cand = a.plus(b).minus(&weight[v]);
                            if dp[mask][v].as_ref().is_none_or(|cur| cand < *cur) {
                                dp[mask][v] = Some(cand);
                                back[mask][v] = Back::Merge(s1);
                            }
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
            }
        }
        // grow along edges: dp[mask][u] <= dp[mask][v] + w(u)
        let mut heap: BinaryHeap<Reverse<(Cost<K>, usize)>> = dp[mask]
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.clone().map(|c| Reverse((c, v))))
            .collect();
        while let Some(Reverse((c, v))) = heap.pop() {
            if dp[mask][v].as_ref() != Some(&c) {
                continue;
            }
            for &u in g.neighbors(v) {
                let cand = c.plus(&weight[u]);
                if dp[mask][u].as_ref().is_none_or(|cur| cand < *cur) {
                    dp[mask][u] = Some(cand.clone());
                    back[mask][u] = Back::Extend(v);
                    heap.push(Reverse((cand, u)));
                }
            }
        }
    }

    let root = terms[0];
    dp[full][root].as_ref()?;
    let mut picked = vec![false; m];
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        picked[v] = true;
        match back[mask][v] {
            Back::Leaf => {}
            Back::Merge(s1) => {
                stack.push((s1, v));
                stack.push((mask ^ s1, v));
            }
            Back::Extend(from) => stack.push((mask, from)),
        }
    }
    Some((0..m).filter(|&v| picked[v]).collect())
}

// ---------------------------------------------------------------------------
// Bounded bipartition
// ---------------------------------------------------------------------------

/// Splits `h_vertices` into two sides whose induced components have at most
/// `bound` vertices each. Vertices are decided in BFS order from the minimum
/// vertex, trying the depth-parity side first; a branch is cut as soon as the
/// component of the vertex just placed exceeds the bound.
pub fn bounded_bipartition(
    host: &Graph,
    h_vertices: &VertexSet,
    bound: usize,
) -> Result<(VertexSet, VertexSet), SpannerError> {
    if h_vertices.is_empty() {
        return Ok((VertexSet::new(), VertexSet::new()));
    }
    if bound == 0 {
        return Err(SpannerError::BipartitionNotFound { bound });
    }
    let (local, to_host) = host.induced_subgraph(h_vertices);
    let m = local.n();

    let mut order = Vec::with_capacity(m);
    let mut parity = vec![0u8; m];
    let mut seen = vec![false; m];
    for root in 0..m {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in local.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parity[w] = parity[u] ^ 1;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut search = BipartitionSearch {
        g: &local,
        bound,
        side: vec![None; m],
        scratch: Vec::new(),
        mark: vec![0; m],
        stamp: 0,
        nodes: 0,
    };
    // explicit stack: (position in order, next choice index)
    let mut pos = 0usize;
    let mut choice = vec![0u8; m];
    loop {
        if pos == m {
            break;
        }
        let v = order[pos];
        if choice[pos] == 2 {
            search.side[v] = None;
            choice[pos] = 0;
            if pos == 0 {
                return Err(SpannerError::BipartitionNotFound { bound });
            }
            pos -= 1;
            let prev = order[pos];
            search.side[prev] = None;
            continue;
        }
        let s = parity[v] ^ choice[pos];
        choice[pos] += 1;
        search.nodes += 1;
        if search.nodes > BIPARTITION_NODE_LIMIT {
            return Err(SpannerError::BipartitionBudget(BIPARTITION_NODE_LIMIT));
        }
        search.side[v] = Some(s);
        if search.component_within_bound(v) {
            pos += 1;
        } else {
            search.side[v] = None;
        }
    }

    let mut a = VertexSet::new();
    let mut b = VertexSet::new();
    for (&host_v, side) in to_host.iter().zip(&search.side) {
        match side {
            Some(0) => a.insert(host_v),
            _ => b.insert(host_v),
        };
    }
    Ok((a, b))
}

struct BipartitionSearch<'a> {
    g: &'a Graph,
    bound: usize,
    side: Vec<Option<u8>>,
    scratch: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    nodes: u64,
}

impl BipartitionSearch<'_> {
    /// Size of `v`'s same-side component among decided vertices is <= bound.
    fn component_within_bound(&mut self, v: usize) -> bool {
        let s = self.side[v];
        self.stamp += 1;
        self.scratch.clear();
        self.scratch.push(v);
        self.mark[v] = self.stamp;
        let mut size = 1;
        while let Some(u) = self.scratch.pop() {
            for &w in self.g.neighbors(u) {
                if self.mark[w] != self.stamp && self.side[w] == s {
                    self.mark[w] = self.stamp;
                    size += 1;
                    if size > self.bound {
                        return false;
                    }
                    self.scratch.push(w);
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Local search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Swap sides on everything outside one component of the cross graph.
    Reconnect,
    /// Pull an outside vertex into the side where it has no neighbors.
    ExtendA(Vertex),
    ExtendB(Vertex),
}

/// Instrumentation from one [`refine_triple`] run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefineStats {
    pub moves: Vec<Move>,
    /// Cross-edge count before the first move and after each move.
    pub cross_history: Vec<usize>,
    /// Edges induced by the request component; an upper bound on the number
    /// of moves.
    pub move_budget: usize,
}

impl RefineStats {
    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    pub fn strictly_increasing(&self) -> bool {
        self.cross_history.windows(2).all(|w| w[0] < w[1])
    }
}

/// Which spanner property a triple fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleViolation {
    #[error("sides do not partition H")]
    NotPartition,
    #[error("H is empty, disconnected, or leaves the component")]
    BadSubgraph,
    #[error("terminal {0} missing from H")]
    MissingTerminal(Vertex),
    #[error("same-side component {0:?} exceeds bound {1}")]
    ComponentTooLarge(VertexSet, usize),
    #[error("cross bipartite subgraph is disconnected")]
    CrossDisconnected,
    #[error("vertex {0} touches H but misses one side")]
    OneSided(Vertex),
}

/// Largest component of `G[side]`, or `None` if all components fit in `bound`.
pub fn oversized_component(g: &Graph, side: &VertexSet, bound: usize) -> Option<VertexSet> {
    g.connected_components(Some(side))
        .into_iter()
        .find(|c| c.len() > bound)
}

/// Whether the edges of `G[h]` between `a` and `b` connect all of `h`.
/// A single vertex counts as connected.
pub fn cross_graph_connected(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    cross_components(g, a, b).len() <= 1
}

fn cross_components(g: &Graph, a: &VertexSet, b: &VertexSet) -> Vec<VertexSet> {
    let in_a = a.mask(g.n());
    let in_b = b.mask(g.n());
    let h = a.union(b);
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in h.iter() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            comp.insert(u);
            let other = if in_a[u] { &in_b } else { &in_a };
            for &w in g.neighbors(u) {
                if other[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// First vertex (ascending) of `component \ H` adjacent to `H` with no
/// neighbor in `A`, or failing that no neighbor in `B`.
fn one_sided_vertex(g: &Graph, component: &VertexSet, t: &Triple) -> Option<Move> {
    let in_a = t.side_a.mask(g.n());
    let in_b = t.side_b.mask(g.n());
    for v in component.iter().filter(|&v| !t.h.contains(v)) {
        let na = g.neighbors(v).iter().any(|&w| in_a[w]);
        let nb = g.neighbors(v).iter().any(|&w| in_b[w]);
        match (na, nb) {
            (false, true) => return Some(Move::ExtendA(v)),
            (true, false) => return Some(Move::ExtendB(v)),
            _ => {}
        }
    }
    None
}

/// Checks the three spanner properties of `t` relative to `component`, plus
/// the structural requirements (partition, connectivity, terminals covered).
pub fn check_triple(
    g: &Graph,
    component: &VertexSet,
    terminals: &VertexSet,
    t: &Triple,
    bound: usize,
) -> Result<(), TripleViolation> {
    if !t.side_a.is_disjoint(&t.side_b) || t.side_a.union(&t.side_b) != t.h {
        return Err(TripleViolation::NotPartition);
    }
    if !t.h.is_subset(component) || !g.is_connected_set(&t.h) {
        return Err(TripleViolation::BadSubgraph);
    }
    if let Some(v) = terminals.iter().find(|&v| !t.h.contains(v)) {
        return Err(TripleViolation::MissingTerminal(v));
    }
    for side in [&t.side_a, &t.side_b] {
        if let Some(c) = oversized_component(g, side, bound) {
            return Err(TripleViolation::ComponentTooLarge(c, bound));
        }
    }
    if !cross_graph_connected(g, &t.side_a, &t.side_b) {
        return Err(TripleViolation::CrossDisconnected);
    }
    let in_a = t.side_a.mask(g.n());
    let in_b = t.side_b.mask(g.n());
    for v in component.iter().filter(|&v| !t.h.contains(v)) {
        let na = g.neighbors(v).iter().any(|&w| in_a[w]);
        let nb = g.neighbors(v).iter().any(|&w| in_b[w]);
        if na != nb {
            return Err(TripleViolation::OneSided(v));
        }
    }
    Ok(())
}

/// Local search from `start` until neither improvement move applies. Each
/// round tries a reconnect first, then an extension by the lowest eligible
/// vertex.
pub fn refine_triple(
    req: &SpannerRequest<'_>,
    start: Triple,
) -> Result<(Triple, RefineStats), SpannerError> {
    let g = req.host;
    let bound = req.bound();
    let mut t = Triple::new(g, start.side_a, start.side_b);
    if !t.h.is_subset(&req.component) || !req.terminals.is_subset(&t.h) {
        return Err(SpannerError::Internal(
            "start triple must lie in the component and cover the terminals".into(),
        ));
    }
    let mut stats = RefineStats {
        moves: Vec::new(),
        cross_history: vec![t.cross_edges],
        move_budget: g.induced_edge_count(&req.component),
    };
    loop {
        for side in [&t.side_a, &t.side_b] {
            if let Some(c) = oversized_component(g, side, bound) {
                return Err(SpannerError::Internal(format!(
                    "side component {c:?} exceeds bound {bound}"
                )));
            }
        }
        let comps = cross_components(g, &t.side_a, &t.side_b);
        let mv = if comps.len() > 1 {
            // comps[0] holds min(H)
            let x = &comps[0];
            let (xa, ya) = (t.side_a.intersection(x), t.side_a.difference(x));
            let (xb, yb) = (t.side_b.intersection(x), t.side_b.difference(x));
            t = Triple::new(g, xa.union(&yb), xb.union(&ya));
            Move::Reconnect
        } else if let Some(mv) = one_sided_vertex(g, &req.component, &t) {
            let (mut a, mut b) = (t.side_a.clone(), t.side_b.clone());
            match mv {
                Move::ExtendA(v) => a.insert(v),
                Move::ExtendB(v) => b.insert(v),
                Move::Reconnect => unreachable!(),
            };
            t = Triple::new(g, a, b);
            mv
        } else {
            return Ok((t, stats));
        };
        let prev = *stats.cross_history.last().unwrap();
        stats.moves.push(mv);
        stats.cross_history.push(t.cross_edges);
        if t.cross_edges <= prev {
            return Err(SpannerError::Internal(format!(
                "{mv:?} did not increase cross edges ({prev} -> {})",
                t.cross_edges
            )));
        }
        if stats.moves.len() > stats.move_budget {
            return Err(SpannerError::Internal(format!(
                "move count exceeded budget {}",
                stats.move_budget
            )));
        }
    }
}

/// Minimum connector, bounded bipartition, then local search.
pub fn build_spanner(req: &SpannerRequest<'_>) -> Result<(Triple, RefineStats), SpannerError> {
    let h = minimum_connector(req.host, &req.component, &req.terminals)?;
    let (a, b) = bounded_bipartition(req.host, &h, req.bound())?;
    let start = Triple::new(req.host, a, b);
    refine_triple(req, start)
}

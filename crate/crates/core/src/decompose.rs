//! Iterative decomposition of a connected graph into parts `H_1, ..., H_l`.
//!
//! `H_1` is an inclusion-maximal connected bipartite induced subgraph. Each
//! later part is a parity spanner built inside the lowest uncovered
//! component, with one terminal per earlier part touching that component.
//! If some component touches `t - 1` earlier parts, those parts together
//! with the component yield an odd `K_t` expansion, and the run stops with
//! [`DecomposeOutcome::Stuck`].
//!
//! Invariants maintained for every prefix `H_1..H_i` of a completed run:
//!
//! 1. same-side components of every part have at most `ceil((t-2)/2)`
//!    vertices;
//! 2. each part's `A`–`B` edges connect the part;
//! 3. a vertex outside `H_1..H_i` that touches `H_i` sees both `A_i` and
//!    `B_i`;
//! 4. each component of `G - (H_1 ∪ .. ∪ H_i)` touches at most `t - 2` of
//!    the parts, and those parts are pairwise adjacent.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::spanner::{
    build_spanner, cross_graph_connected, half_ceil, oversized_component, RefineStats,
    SpannerError, SpannerRequest,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("t must be at least 3, got {0}")]
    BadT(usize),
    #[error("graph is empty or disconnected")]
    Disconnected,
    #[error(transparent)]
    Spanner(#[from] SpannerError),
    #[error("invariant breach: {0}")]
    Invariant(#[from] InvariantViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("part {0} overlaps an earlier part")]
    Overlap(usize),
    #[error("parts leave vertex {0} uncovered")]
    Uncovered(Vertex),
    #[error("part {0} is empty, disconnected, or its sides do not partition it")]
    Malformed(usize),
    #[error("part {part}: same-side component {component:?} exceeds {bound}")]
    ComponentBound {
        part: usize,
        component: VertexSet,
        bound: usize,
    },
    #[error("part {0}: cross bipartite subgraph disconnected")]
    CrossDisconnected(usize),
    #[error("part {part}: later vertex {vertex} sees only one side")]
    OneSided { part: usize, vertex: Vertex },
    #[error("after part {prefix}: component {component:?} touches {count} parts")]
    TooManyAttachments {
        prefix: usize,
        component: VertexSet,
        count: usize,
    },
    #[error("after part {prefix}: parts {a} and {b} touch the same component but not each other")]
    NotPairwiseAdjacent { prefix: usize, a: usize, b: usize },
}

/// One piece `H_i` with its sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    /// 1-based construction order.
    pub index: usize,
    pub vertices: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    /// 1-based indices of the earlier parts adjacent to the component this
    /// part was carved from.
    pub attached: Vec<usize>,
}

impl Serialize for Part {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Part", 4)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("H", &self.vertices)?;
        st.serialize_field("A", &self.side_a)?;
        st.serialize_field("B", &self.side_b)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub t: usize,
    pub parts: Vec<Part>,
    #[serde(skip)]
    vertex_to_part: Vec<Option<usize>>,
    /// Local-search instrumentation, one entry per part after the first.
    #[serde(skip)]
    pub spanner_log: Vec<RefineStats>,
}

impl Decomposition {
    fn new(t: usize, n: usize) -> Self {
        Decomposition {
            t,
            parts: Vec::new(),
            vertex_to_part: vec![None; n],
            spanner_log: Vec::new(),
        }
    }

    fn push(
        &mut self,
        vertices: VertexSet,
        side_a: VertexSet,
        side_b: VertexSet,
        attached: Vec<usize>,
    ) {
        let index = self.parts.len() + 1;
        for v in vertices.iter() {
            self.vertex_to_part[v] = Some(index);
        }
        self.parts.push(Part {
            index,
            vertices,
            side_a,
            side_b,
            attached,
        });
    }

    /// 1-based index of the part holding `v`.
    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.vertex_to_part.get(v).copied().flatten()
    }

    /// Part by 1-based index.
    pub fn part(&self, index: usize) -> &Part {
        &self.parts[index - 1]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Component-size bound `ceil((t-2)/2)` on each side.
    pub fn side_bound(&self) -> usize {
        half_ceil(self.t - 2)
    }

    pub fn covers(&self, n: usize) -> bool {
        self.vertex_to_part.len() == n && self.vertex_to_part.iter().all(Option::is_some)
    }
}

/// A component touching at least `t - 1` pairwise adjacent parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stuck {
    pub component: VertexSet,
    /// 1-based part indices, ascending.
    pub adjacent_parts: Vec<usize>,
    pub partial: Decomposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Completed(Decomposition),
    Stuck(Stuck),
}

impl DecomposeOutcome {
    pub fn decomposition(&self) -> &Decomposition {
        match self {
            DecomposeOutcome::Completed(d) => d,
            DecomposeOutcome::Stuck(s) => &s.partial,
        }
    }
}

/// Inclusion-maximal connected bipartite induced subgraph grown from vertex
/// 0. Candidates are scanned in ascending order, repeatedly, until none can
/// join; a vertex joins when all its neighbors inside the set share a side.
pub fn maximal_bipartite_part(g: &Graph) -> Part {
    let n = g.n();
    assert!(n > 0, "graph has no vertices");
    let mut side: Vec<Option<bool>> = vec![None; n];
    side[0] = Some(false);
    let mut grew = true;
    while grew {
        grew = false;
        for v in 0..n {
            if side[v].is_some() {
                continue;
            }
            let mut seen = g.neighbors(v).iter().filter_map(|&w| side[w]);
            let Some(first) = seen.next() else { continue };
            if seen.all(|s| s == first) {
                side[v] = Some(!first);
                grew = true;
            }
        }
    }
    let side_a: VertexSet = (0..n).filter(|&v| side[v] == Some(false)).collect();
    let side_b: VertexSet = (0..n).filter(|&v| side[v] == Some(true)).collect();
    Part {
        index: 1,
        vertices: side_a.union(&side_b),
        side_a,
        side_b,
        attached: Vec::new(),
    }
}

/// Uncovered component holding the lowest uncovered vertex, plus the
/// ascending 1-based indices of the parts with an edge into it.
pub fn pick_component(g: &Graph, d: &Decomposition) -> Option<(VertexSet, Vec<usize>)> {
    let start = g.vertices().find(|&v| d.part_of(v).is_none())?;
    let mut comp = VertexSet::singleton(start);
    let mut touched = vec![false; d.len() + 1];
    let mut stack = vec![start];
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            match d.part_of(w) {
                Some(p) => touched[p] = true,
                None if !seen[w] => {
                    seen[w] = true;
                    comp.insert(w);
                    stack.push(w);
                }
                None => {}
            }
        }
    }
    let adjacent = (1..=d.len()).filter(|&p| touched[p]).collect();
    Some((comp, adjacent))
}

/// Adjacency between parts, indexed 1-based; row/column 0 unused.
fn part_adjacency(g: &Graph, d: &Decomposition) -> Vec<Vec<bool>> {
    let l = d.len();
    let mut adj = vec![vec![false; l + 1]; l + 1];
    for (u, v) in g.edges() {
        if let (Some(p), Some(q)) = (d.part_of(u), d.part_of(v)) {
            if p != q {
                adj[p][q] = true;
                adj[q][p] = true;
            }
        }
    }
    adj
}

fn first_nonadjacent_pair(parts: &[usize], adj: &[Vec<bool>]) -> Option<(usize, usize)> {
    for (i, &a) in parts.iter().enumerate() {
        for &b in &parts[i + 1..] {
            if !adj[a][b] {
                return Some((a, b));
            }
        }
    }
    None
}

/// Runs the decomposition on a connected graph.
pub fn decompose(g: &Graph, t: usize) -> Result<DecomposeOutcome, DecomposeError> {
    if t < 3 {
        return Err(DecomposeError::BadT(t));
    }
    if !g.is_connected() {
        return Err(DecomposeError::Disconnected);
    }
    let mut d = Decomposition::new(t, g.n());
    let first = maximal_bipartite_part(g);
    d.push(first.vertices, first.side_a, first.side_b, Vec::new());

    while let Some((component, adjacent)) = pick_component(g, &d) {
        let adj = part_adjacency(g, &d);
        if let Some((a, b)) = first_nonadjacent_pair(&adjacent, &adj) {
            return Err(InvariantViolation::NotPairwiseAdjacent {
                prefix: d.len(),
                a,
                b,
            }
            .into());
        }
        if adjacent.len() + 1 >= t {
            return Ok(DecomposeOutcome::Stuck(Stuck {
                component,
                adjacent_parts: adjacent,
                partial: d,
            }));
        }
        let terminals: VertexSet = adjacent
            .iter()
            .map(|&p| {
                let part = &d.part(p).vertices;
                component
                    .iter()
                    .find(|&v| g.neighbors(v).iter().any(|&w| part.contains(w)))
                    .expect("adjacent part has a neighbor in the component")
            })
            .collect();
        let req = SpannerRequest::new(g, component, terminals)?;
        let (triple, stats) = build_spanner(&req)?;
        d.push(triple.h, triple.side_a, triple.side_b, adjacent);
        d.spanner_log.push(stats);
        if cfg!(debug_assertions) {
            check_parts(g, &d)?;
        }
    }
    check_invariants(g, &d)?;
    Ok(DecomposeOutcome::Completed(d))
}

/// Invariants (1)–(3) plus disjointness and per-part well-formedness.
pub fn check_parts(g: &Graph, d: &Decomposition) -> Result<(), InvariantViolation> {
    let bound = d.side_bound();
    let mut covered = vec![false; g.n()];
    for part in &d.parts {
        let i = part.index;
        if part
            .vertices
            .iter()
            .any(|v| std::mem::replace(&mut covered[v], true))
        {
            return Err(InvariantViolation::Overlap(i));
        }
        if !part.side_a.is_disjoint(&part.side_b)
            || part.side_a.union(&part.side_b) != part.vertices
            || !g.is_connected_set(&part.vertices)
        {
            return Err(InvariantViolation::Malformed(i));
        }
        for side in [&part.side_a, &part.side_b] {
            if let Some(component) = oversized_component(g, side, bound) {
                return Err(InvariantViolation::ComponentBound {
                    part: i,
                    component,
                    bound,
                });
            }
        }
        if !cross_graph_connected(g, &part.side_a, &part.side_b) {
            return Err(InvariantViolation::CrossDisconnected(i));
        }
        // `covered` now marks parts 1..=i
        let in_a = part.side_a.mask(g.n());
        let in_b = part.side_b.mask(g.n());
        for v in g.vertices().filter(|&v| !covered[v]) {
            let na = g.neighbors(v).iter().any(|&w| in_a[w]);
            let nb = g.neighbors(v).iter().any(|&w| in_b[w]);
            if na != nb {
                return Err(InvariantViolation::OneSided { part: i, vertex: v });
            }
        }
    }
    Ok(())
}

/// All four invariants for every prefix, plus coverage of `V(G)`.
pub fn check_invariants(g: &Graph, d: &Decomposition) -> Result<(), InvariantViolation> {
    check_parts(g, d)?;
    if let Some(v) = g.vertices().find(|&v| d.part_of(v).is_none()) {
        return Err(InvariantViolation::Uncovered(v));
    }
    let adj = part_adjacency(g, d);
    let mut allowed = vec![true; g.n()];
    for part in &d.parts {
        for v in part.vertices.iter() {
            allowed[v] = false;
        }
        for component in g.components_in_mask(&allowed) {
            let mut touched: Vec<usize> = component
                .iter()
                .flat_map(|v| g.neighbors(v).iter().filter_map(|&w| d.part_of(w)))
                .filter(|&p| p <= part.index)
                .collect();
            touched.sort_unstable();
            touched.dedup();
            if touched.len() > d.t - 2 {
                return Err(InvariantViolation::TooManyAttachments {
                    prefix: part.index,
                    component,
                    count: touched.len(),
                });
            }
            if let Some((a, b)) = first_nonadjacent_pair(&touched, &adj) {
                return Err(InvariantViolation::NotPairwiseAdjacent {
                    prefix: part.index,
                    a,
                    b,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, grid};

    fn completed(o: DecomposeOutcome) -> Decomposition {
        match o {
            DecomposeOutcome::Completed(d) => d,
            DecomposeOutcome::Stuck(s) => panic!("unexpected stuck state {s:?}"),
        }
    }

    #[test]
    fn maximal_bipartite_examples() {
        let p = maximal_bipartite_part(&cycle(6));
        assert_eq!(p.side_a, VertexSet::from([0, 2, 4]));
        assert_eq!(p.side_b, VertexSet::from([1, 3, 5]));
        let p = maximal_bipartite_part(&cycle(5));
        assert_eq!(p.vertices, VertexSet::from([0, 1, 2, 3]));
        let p = maximal_bipartite_part(&complete(3));
        assert_eq!(p.vertices, VertexSet::from([0, 1]));
        let kb = complete_bipartite(3, 2);
        assert_eq!(maximal_bipartite_part(&kb).vertices, VertexSet::full(5));
    }

    #[test]
    fn pick_component_examples() {
        let g = complete(5);
        let mut d = Decomposition::new(3, 5);
        d.push(
            VertexSet::from([0, 1]),
            VertexSet::from([0]),
            VertexSet::from([1]),
            vec![],
        );
        let (c, adj) = pick_component(&g, &d).unwrap();
        assert_eq!(c, VertexSet::from([2, 3, 4]));
        assert_eq!(adj, vec![1]);

        // path 0-1-2-3-4 with the middle covered: lower piece first
        let p = crate::generators::path(5);
        let mut d = Decomposition::new(3, 5);
        d.push(
            VertexSet::from([2]),
            VertexSet::from([2]),
            VertexSet::new(),
            vec![],
        );
        let (c, _) = pick_component(&p, &d).unwrap();
        assert_eq!(c, VertexSet::from([0, 1]));

        let mut d = Decomposition::new(3, 2);
        d.push(
            VertexSet::from([0, 1]),
            VertexSet::from([0]),
            VertexSet::from([1]),
            vec![],
        );
        assert!(pick_component(&crate::generators::path(2), &d).is_none());
    }

    #[test]
    fn c6_single_part() {
        let d = completed(decompose(&cycle(6), 3).unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(d.parts[0].vertices, VertexSet::full(6));
        assert_eq!(d.parts[0].side_a, VertexSet::from([0, 2, 4]));
    }

    #[test]
    fn k5_gets_stuck() {
        let g = complete(5);
        let DecomposeOutcome::Stuck(s) = decompose(&g, 3).unwrap() else {
            panic!("K5 with t=3 must get stuck");
        };
        let p = &s.partial.parts;
        assert_eq!(p.len(), 2);
        assert_eq!(
            (p[0].side_a.to_vec(), p[0].side_b.to_vec()),
            (vec![0], vec![1])
        );
        assert_eq!(
            (p[1].side_a.to_vec(), p[1].side_b.to_vec()),
            (vec![2], vec![3])
        );
        assert_eq!(s.component, VertexSet::from([4]));
        assert_eq!(s.adjacent_parts, vec![1, 2]);
        assert_eq!(s.partial.spanner_log[0].move_count(), 1);
        check_parts(&g, &s.partial).unwrap();
    }

    #[test]
    fn k4_completes_with_two_parts() {
        let g = complete(4);
        let d = completed(decompose(&g, 3).unwrap());
        assert_eq!(d.len(), 2);
        assert_eq!(d.parts[1].vertices, VertexSet::from([2, 3]));
        assert_eq!(d.parts[1].attached, vec![1]);
        check_invariants(&g, &d).unwrap();
    }

    #[test]
    fn larger_t_on_grid_and_cliques() {
        let g = grid(4, 5);
        let d = completed(decompose(&g, 3).unwrap());
        assert_eq!(d.len(), 1);
        for t in 3..8 {
            let g = complete(7);
            match decompose(&g, t).unwrap() {
                DecomposeOutcome::Completed(d) => check_invariants(&g, &d).unwrap(),
                DecomposeOutcome::Stuck(s) => {
                    assert!(s.adjacent_parts.len() + 1 >= t);
                    check_parts(&g, &s.partial).unwrap();
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(decompose(&complete(3), 2), Err(DecomposeError::BadT(2)));
        assert_eq!(
            decompose(&Graph::empty(2), 3),
            Err(DecomposeError::Disconnected)
        );
    }

    #[test]
    fn invariant_checker_catches_one_sided_vertex() {
        // path 0-1-2 with H_1 = {0} alone: vertex 1 sees only side A
        let g = crate::generators::path(3);
        let mut d = Decomposition::new(3, 3);
        d.push(
            VertexSet::from([0]),
            VertexSet::from([0]),
            VertexSet::new(),
            vec![],
        );
        assert_eq!(
            check_parts(&g, &d),
            Err(InvariantViolation::OneSided { part: 1, vertex: 1 })
        );
    }

    #[test]
    fn json_shape() {
        let d = completed(decompose(&complete(4), 3).unwrap());
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"t":3,"parts":[{"index":1,"H":[0,1],"A":[0],"B":[1]},{"index":2,"H":[2,3],"A":[2],"B":[3]}]}"#
        );
    }
}

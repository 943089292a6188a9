//! Simple undirected graphs over dense vertex indices, plus the traversal
//! primitives the rest of the crate is built on.
//!
//! A [`Graph`] is immutable once built. Subgraphs are passed around as
//! `(&Graph, &VertexSet)` pairs; only [`Graph::induced_subgraph`] copies.
//! Every traversal visits vertices and neighbors in ascending index order, so
//! all results are deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex set does not induce a connected subgraph")]
    Disconnected,
    #[error("vertex set is empty")]
    EmptySet,
}

/// An ordered set of vertex indices.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn extend<I: IntoIterator<Item = Vertex>>(&mut self, it: I) {
        self.0.extend(it)
    }

    /// Boolean membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            m[v] = true;
        }
        m
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Normalized undirected edge, smaller endpoint first.
pub fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A tree living inside some host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSubgraph {
    pub vertices: VertexSet,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl TreeSubgraph {
    pub fn singleton(v: Vertex) -> Self {
        TreeSubgraph {
            vertices: VertexSet::singleton(v),
            edges: Vec::new(),
        }
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Either a 2-coloring of a connected vertex set or an odd closed walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parity {
    /// `side_a` holds the minimum vertex of the set.
    Bipartite {
        side_a: VertexSet,
        side_b: VertexSet,
    },
    /// Vertex sequence `w[0], w[1], ..., w[len-1]` with an edge between each
    /// consecutive pair and between the last and the first; `len` is odd.
    OddWalk(Vec<Vertex>),
}

impl Graph {
    /// Builds a simple graph on vertices `0..n`. Self-loops and repeated
    /// pairs (in either orientation) are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = edge_key(u, w[0]);
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of edges with both endpoints in `set`.
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        let mask = set.mask(self.n());
        set.iter()
            .map(|u| self.adj[u].iter().filter(|&&v| v > u && mask[v]).count())
            .sum()
    }

    /// True if some edge joins `a` and `b`.
    pub fn sets_adjacent(&self, a: &VertexSet, b: &VertexSet) -> bool {
        let mask = b.mask(self.n());
        a.iter().any(|u| self.adj[u].iter().any(|&v| mask[v]))
    }

    /// Copy of the subgraph induced by `set`, relabelled to `0..set.len()` in
    /// ascending order. The second value maps new labels to old ones.
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Vec<Vertex>) {
        let to_old = set.to_vec();
        let mut to_new = vec![usize::MAX; self.n()];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = i;
        }
        let mut adj = vec![Vec::new(); to_old.len()];
        let mut edge_count = 0;
        for (i, &v) in to_old.iter().enumerate() {
            for &w in &self.adj[v] {
                if to_new[w] != usize::MAX {
                    adj[i].push(to_new[w]);
                    if to_new[w] > i {
                        edge_count += 1;
                    }
                }
            }
        }
        (Graph { adj, edge_count }, to_old)
    }

    /// Connected components of the whole graph, or of the subgraph induced by
    /// `restrict`, ordered by their minimum vertex.
    pub fn connected_components(&self, restrict: Option<&VertexSet>) -> Vec<VertexSet> {
        let allowed = match restrict {
            Some(set) => set.mask(self.n()),
            None => vec![true; self.n()],
        };
        self.components_in_mask(&allowed)
    }

    pub(crate) fn components_in_mask(&self, allowed: &[bool]) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if !allowed[s] || seen[s] {
                continue;
            }
            let mut comp = VertexSet::new();
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components(None).len() == 1
    }

    /// Whether `set` is nonempty and induces a connected subgraph.
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        !set.is_empty() && self.connected_components(Some(set)).len() == 1
    }

    /// Two-colors the subgraph induced by `within` by BFS from its minimum
    /// vertex, or returns an odd closed walk when no 2-coloring exists.
    pub fn bipartition_or_odd_cycle(&self, within: &VertexSet) -> Result<Parity, GraphError> {
        let root = within.first().ok_or(GraphError::EmptySet)?;
        let mask = within.mask(self.n());
        let mut depth = vec![usize::MAX; self.n()];
        let mut parent = vec![usize::MAX; self.n()];
        let mut order = Vec::with_capacity(within.len());
        let mut queue = VecDeque::from([root]);
        depth[root] = 0;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &self.adj[u] {
                if mask[w] && depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if order.len() != within.len() {
            return Err(GraphError::Disconnected);
        }
        for &u in &order {
            for &w in &self.adj[u] {
                if mask[w] && depth[w] % 2 == depth[u] % 2 {
                    // root .. u, then w .. back up to (excluding) root
                    let mut up = Vec::new();
                    let mut x = u;
                    while x != root {
                        up.push(x);
                        x = parent[x];
                    }
                    up.push(root);
                    up.reverse();
                    let mut x = w;
                    while x != root {
                        up.push(x);
                        x = parent[x];
                    }
                    return Ok(Parity::OddWalk(up));
                }
            }
        }
        let (side_a, side_b) = order.iter().partition::<Vec<_>, _>(|&&v| depth[v] % 2 == 0);
        Ok(Parity::Bipartite {
            side_a: side_a.into_iter().collect(),
            side_b: side_b.into_iter().collect(),
        })
    }

    /// BFS spanning tree of the subgraph induced by `within`, rooted at its
    /// minimum vertex, using only edges accepted by `allowed` (all edges when
    /// `None`).
    pub fn spanning_tree(
        &self,
        within: &VertexSet,
        allowed: Option<&dyn Fn(Vertex, Vertex) -> bool>,
    ) -> Result<TreeSubgraph, GraphError> {
        let root = within.first().ok_or(GraphError::EmptySet)?;
        let mask = within.mask(self.n());
        let mut seen = vec![false; self.n()];
        let mut edges = Vec::with_capacity(within.len().saturating_sub(1));
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if mask[w] && !seen[w] && allowed.is_none_or(|f| f(u, w)) {
                    seen[w] = true;
                    edges.push(edge_key(u, w));
                    queue.push_back(w);
                }
            }
        }
        if edges.len() + 1 != within.len() {
            return Err(GraphError::Disconnected);
        }
        Ok(TreeSubgraph {
            vertices: within.clone(),
            edges,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn path_degrees() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), [1, 2, 1]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn k1_and_rejections() {
        let g = Graph::from_edges(1, []).unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        assert_eq!(Graph::from_edges(1, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn components() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            p3.connected_components(None),
            vec![VertexSet::from([0, 1, 2])]
        );
        let e3 = Graph::empty(3);
        assert_eq!(e3.connected_components(None).len(), 3);
        let c4 = cycle(4);
        let comps = c4.connected_components(Some(&VertexSet::from([0, 2])));
        assert_eq!(comps, vec![VertexSet::from([0]), VertexSet::from([2])]);
    }

    #[test]
    fn parity_of_cycles() {
        match cycle(6)
            .bipartition_or_odd_cycle(&VertexSet::full(6))
            .unwrap()
        {
            Parity::Bipartite { side_a, side_b } => {
                assert_eq!(side_a, VertexSet::from([0, 2, 4]));
                assert_eq!(side_b, VertexSet::from([1, 3, 5]));
            }
            other => panic!("{other:?}"),
        }
        let c5 = cycle(5);
        match c5.bipartition_or_odd_cycle(&VertexSet::full(5)).unwrap() {
            Parity::OddWalk(w) => {
                assert_eq!(w.len(), 5);
                for i in 0..w.len() {
                    assert!(c5.has_edge(w[i], w[(i + 1) % w.len()]));
                }
            }
            other => panic!("{other:?}"),
        }
        let k1 = Graph::empty(1);
        assert_eq!(
            k1.bipartition_or_odd_cycle(&VertexSet::from([0])).unwrap(),
            Parity::Bipartite {
                side_a: VertexSet::from([0]),
                side_b: VertexSet::new()
            }
        );
        assert_eq!(
            Graph::empty(2).bipartition_or_odd_cycle(&VertexSet::full(2)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn spanning_trees() {
        let c4 = cycle(4);
        let t = c4.spanning_tree(&VertexSet::full(4), None).unwrap();
        assert_eq!(t.edges, vec![(0, 1), (0, 3), (1, 2)]);

        let tree = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let t = tree.spanning_tree(&VertexSet::full(4), None).unwrap();
        let mut e = t.edges.clone();
        e.sort();
        assert_eq!(e, tree.edges().collect::<Vec<_>>());

        // only 0-1 and 2-3
        let horizontal = |u: usize, v: usize| edge_key(u, v) == (0, 1) || edge_key(u, v) == (2, 3);
        assert_eq!(
            c4.spanning_tree(&VertexSet::full(4), Some(&horizontal)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn induced_relabel() {
        let c5 = cycle(5);
        let (h, map) = c5.induced_subgraph(&VertexSet::from([1, 2, 4]));
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn json_shape() {
        let g = Graph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":1,"edges":[[0,0]]}"#).is_err());
    }
}

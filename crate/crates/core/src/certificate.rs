//! Odd `K_t` expansion certificates: `t` disjoint trees, a 2-coloring that is
//! proper on every tree, and one monochromatic edge joining each pair of
//! trees.
//!
//! [`extract_certificate`] reads one off a stuck decomposition.
//! [`verify_certificate`] checks one against a graph using nothing but the
//! graph's adjacency.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{Decomposition, Stuck};
use crate::graph::{edge_key, Graph, TreeSubgraph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Join {
    /// 0-based tree indices, `pair.0 < pair.1`.
    pub pair: (usize, usize),
    /// Endpoint in `trees[pair.0]` first.
    pub edge: (Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddExpansionCertificate {
    pub t: usize,
    pub trees: Vec<TreeSubgraph>,
    /// Colors 1 and 2 for every tree vertex.
    pub coloring: BTreeMap<Vertex, u8>,
    pub joins: Vec<Join>,
}

impl OddExpansionCertificate {
    /// Renames every vertex through `map`.
    pub fn relabel(&self, map: &[Vertex]) -> OddExpansionCertificate {
        OddExpansionCertificate {
            t: self.t,
            trees: self
                .trees
                .iter()
                .map(|tr| TreeSubgraph {
                    vertices: tr.vertices.iter().map(|v| map[v]).collect(),
                    edges: tr
                        .edges
                        .iter()
                        .map(|&(u, v)| edge_key(map[u], map[v]))
                        .collect(),
                })
                .collect(),
            coloring: self.coloring.iter().map(|(&v, &c)| (map[v], c)).collect(),
            joins: self
                .joins
                .iter()
                .map(|j| Join {
                    pair: j.pair,
                    edge: (map[j.edge.0], map[j.edge.1]),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("stuck state lists {found} adjacent parts, need at least {needed}")]
    TooFewParts { found: usize, needed: usize },
    #[error("no edge between tree {0} and tree {1}")]
    MissingAdjacency(usize, usize),
    #[error("vertex {vertex} touches part {part} but lacks a neighbor on one side")]
    MissingSideNeighbor { part: usize, vertex: Vertex },
    #[error("part {0} has no spanning tree of cross edges")]
    NoCrossTree(usize),
}

/// 2-colors a tree by depth parity from its minimum vertex (root gets 1).
fn tree_parity(tree: &TreeSubgraph) -> BTreeMap<Vertex, u8> {
    let mut nbrs: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in &tree.edges {
        nbrs.entry(u).or_default().push(v);
        nbrs.entry(v).or_default().push(u);
    }
    let root = tree.vertices.first().expect("tree is nonempty");
    let mut color = BTreeMap::from([(root, 1u8)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let cu = color[&u];
        for &w in nbrs.get(&u).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = color.entry(w) {
                e.insert(3 - cu);
                queue.push_back(w);
            }
        }
    }
    color
}

/// Builds the certificate from a stuck state. The lowest `t - 1` adjacent
/// parts each contribute the BFS tree of their cross edges, colored by side
/// (`A` is 1, `B` is 2); the stuck component contributes its BFS tree,
/// colored by depth parity.
///
/// For trees `i < j` the join comes from the lowest vertex `y` of tree `j`
/// adjacent to tree `i`: `y` sees both sides of part `i`, so one of its two
/// lowest neighbors there shares its color.
pub fn extract_certificate(
    g: &Graph,
    t: usize,
    stuck: &Stuck,
) -> Result<OddExpansionCertificate, ExtractError> {
    let needed = t.saturating_sub(1);
    if stuck.adjacent_parts.len() < needed {
        return Err(ExtractError::TooFewParts {
            found: stuck.adjacent_parts.len(),
            needed,
        });
    }
    let d: &Decomposition = &stuck.partial;
    let chosen = &stuck.adjacent_parts[..needed];

    let mut trees = Vec::with_capacity(t);
    let mut coloring = BTreeMap::new();
    for &p in chosen {
        let part = d.part(p);
        let in_a = part.side_a.mask(g.n());
        let cross = |u: Vertex, v: Vertex| in_a[u] != in_a[v];
        let tree = g
            .spanning_tree(&part.vertices, Some(&cross))
            .map_err(|_| ExtractError::NoCrossTree(p))?;
        for v in part.vertices.iter() {
            coloring.insert(v, if in_a[v] { 1 } else { 2 });
        }
        trees.push(tree);
    }
    let tail = g
        .spanning_tree(&stuck.component, None)
        .expect("stuck component is connected");
    coloring.extend(tree_parity(&tail));
    trees.push(tail);

    // sides per tree; only the part trees are queried for `x`
    let sides: Vec<(VertexSet, VertexSet)> = chosen
        .iter()
        .map(|&p| (d.part(p).side_a.clone(), d.part(p).side_b.clone()))
        .collect();
    let mut joins = Vec::with_capacity(t * (t - 1) / 2);
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            let lower = &trees[i].vertices;
            let y = trees[j]
                .vertices
                .iter()
                .find(|&y| g.neighbors(y).iter().any(|&w| lower.contains(w)))
                .ok_or(ExtractError::MissingAdjacency(i, j))?;
            let (a_side, b_side) = &sides[i];
            let missing = ExtractError::MissingSideNeighbor {
                part: chosen[i],
                vertex: y,
            };
            let a = g.neighbors(y).iter().copied().find(|&w| a_side.contains(w));
            let b = g.neighbors(y).iter().copied().find(|&w| b_side.contains(w));
            let (Some(a), Some(b)) = (a, b) else {
                return Err(missing);
            };
            let x = if coloring[&a] == coloring[&y] { a } else { b };
            debug_assert_eq!(coloring[&x], coloring[&y]);
            joins.push(Join {
                pair: (i, j),
                edge: (x, y),
            });
        }
    }

    Ok(OddExpansionCertificate {
        t,
        trees,
        coloring,
        joins,
    })
}

/// First violated clause of the odd expansion definition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateRejection {
    #[error("expected {expected} trees, found {found}")]
    TreeCount { expected: usize, found: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("tree {0} is empty")]
    EmptyTree(usize),
    #[error("tree {tree}: edge {edge:?} is not an edge of the graph")]
    TreeEdgeAbsent { tree: usize, edge: (Vertex, Vertex) },
    #[error("tree {tree}: edge {edge:?} leaves the tree's vertex set")]
    TreeEdgeOutside { tree: usize, edge: (Vertex, Vertex) },
    #[error("tree {0} is not a tree")]
    NotATree(usize),
    #[error("trees not disjoint: vertex {0} is shared")]
    NotDisjoint(Vertex),
    #[error("vertex {0} has no color")]
    Uncolored(Vertex),
    #[error("vertex {0} has color {1}, expected 1 or 2")]
    BadColor(Vertex, u8),
    #[error("coloring names vertex {0}, which lies in no tree")]
    StrayColor(Vertex),
    #[error("tree {tree}: edge {edge:?} is monochromatic")]
    TreeNotProper { tree: usize, edge: (Vertex, Vertex) },
    #[error("join for pair {0:?} refers to a missing tree")]
    BadPair((usize, usize)),
    #[error("pair {0:?} has more than one join")]
    DuplicateJoin((usize, usize)),
    #[error("pair {0:?} has no join")]
    MissingJoin((usize, usize)),
    #[error("join edge {0:?} is not an edge of the graph")]
    JoinEdgeAbsent((Vertex, Vertex)),
    #[error("join edge {edge:?} does not connect trees {pair:?}")]
    JoinMisplaced {
        pair: (usize, usize),
        edge: (Vertex, Vertex),
    },
    #[error("join edge not monochromatic: {0:?}")]
    JoinNotMonochromatic((Vertex, Vertex)),
}

impl CertificateRejection {
    /// Whether the certificate names vertices the graph does not have.
    pub fn is_mismatch(&self) -> bool {
        matches!(self, CertificateRejection::VertexOutOfRange(_))
    }
}

/// Checks `cert` against `g` clause by clause. Total: never panics on
/// malformed input.
pub fn verify_certificate(
    g: &Graph,
    cert: &OddExpansionCertificate,
) -> Result<(), CertificateRejection> {
    use CertificateRejection as R;
    let n = g.n();
    if cert.trees.len() != cert.t {
        return Err(R::TreeCount {
            expected: cert.t,
            found: cert.trees.len(),
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, tree) in cert.trees.iter().enumerate() {
        if tree.vertices.is_empty() {
            return Err(R::EmptyTree(i));
        }
        for v in tree.vertices.iter() {
            if v >= n {
                return Err(R::VertexOutOfRange(v));
            }
            if owner[v].is_some() {
                return Err(R::NotDisjoint(v));
            }
            owner[v] = Some(i);
        }
    }
    for (i, tree) in cert.trees.iter().enumerate() {
        for &(u, v) in &tree.edges {
            if u >= n || v >= n {
                return Err(R::VertexOutOfRange(u.max(v)));
            }
            if owner[u] != Some(i) || owner[v] != Some(i) {
                return Err(R::TreeEdgeOutside {
                    tree: i,
                    edge: (u, v),
                });
            }
            if !g.has_edge(u, v) {
                return Err(R::TreeEdgeAbsent {
                    tree: i,
                    edge: (u, v),
                });
            }
        }
        if tree.edges.len() + 1 != tree.vertices.len() || !spans(tree) {
            return Err(R::NotATree(i));
        }
    }
    for (&v, &c) in &cert.coloring {
        if v >= n {
            return Err(R::VertexOutOfRange(v));
        }
        if owner[v].is_none() {
            return Err(R::StrayColor(v));
        }
        if c != 1 && c != 2 {
            return Err(R::BadColor(v, c));
        }
    }
    for tree in &cert.trees {
        if let Some(v) = tree
            .vertices
            .iter()
            .find(|v| !cert.coloring.contains_key(v))
        {
            return Err(R::Uncolored(v));
        }
    }
    for (i, tree) in cert.trees.iter().enumerate() {
        if let Some(&edge) = tree
            .edges
            .iter()
            .find(|(u, v)| cert.coloring[u] == cert.coloring[v])
        {
            return Err(R::TreeNotProper { tree: i, edge });
        }
    }
    let t = cert.trees.len();
    let mut seen = vec![vec![false; t]; t];
    for join in &cert.joins {
        let (i, j) = join.pair;
        if i >= j || j >= t {
            return Err(R::BadPair(join.pair));
        }
        if std::mem::replace(&mut seen[i][j], true) {
            return Err(R::DuplicateJoin(join.pair));
        }
        let (x, y) = join.edge;
        if x >= n || y >= n {
            return Err(R::VertexOutOfRange(x.max(y)));
        }
        if !g.has_edge(x, y) {
            return Err(R::JoinEdgeAbsent(join.edge));
        }
        let ends = (owner[x], owner[y]);
        if ends != (Some(i), Some(j)) && ends != (Some(j), Some(i)) {
            return Err(R::JoinMisplaced {
                pair: join.pair,
                edge: join.edge,
            });
        }
        if cert.coloring[&x] != cert.coloring[&y] {
            return Err(R::JoinNotMonochromatic(join.edge));
        }
    }
    for (i, row) in seen.iter().enumerate() {
        if let Some(j) = (i + 1..t).find(|&j| !row[j]) {
            return Err(R::MissingJoin((i, j)));
        }
    }
    Ok(())
}

/// Whether the tree's edges connect all of its vertices.
fn spans(tree: &TreeSubgraph) -> bool {
    let verts = tree.vertices.to_vec();
    let idx = |v: Vertex| verts.binary_search(&v).ok();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut merges = 0;
    for &(u, v) in &tree.edges {
        let (Some(a), Some(b)) = (idx(u), idx(v)) else {
            return false;
        };
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            merges += 1;
        }
    }
    merges + 1 == verts.len()
}

//! Clustered colorings from completed decompositions.
//!
//! Parts form an auxiliary graph in which each part has at most `t - 2`
//! earlier neighbors, so greedy coloring in construction order needs only
//! `t - 1` hues. A vertex's final color is its part's hue paired with its
//! side in that part. A monochromatic component therefore cannot leave its
//! part or its side.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::Decomposition;
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("part {part} has {degree} earlier neighbors, more than t-2 = {limit}")]
    BackDegree {
        part: usize,
        degree: usize,
        limit: usize,
    },
    #[error("no free hue for part {0}")]
    PaletteExhausted(usize),
    #[error("vertex {0} belongs to no part")]
    Uncovered(Vertex),
    #[error("monochromatic edge {0}-{1} crosses parts or sides")]
    Leak(Vertex, Vertex),
}

/// Part adjacency, 0-based by construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    pub adj: Vec<BTreeSet<usize>>,
}

impl AuxiliaryGraph {
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    /// Number of neighbors with a smaller index.
    pub fn back_degree(&self, i: usize) -> usize {
        self.adj[i].range(..i).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteredColoring {
    pub t: usize,
    /// `(hue, side)` per vertex, hue in `1..=t-1`, side in `{1, 2}`.
    pub colors: Vec<(usize, u8)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub colors_used: usize,
    pub max_component: usize,
    pub max_defect: usize,
}

impl ColoringReport {
    /// Defect bound `ceil((t-4)/2)`, defined for `t >= 4`.
    pub fn defect_bound(t: usize) -> Option<usize> {
        (t >= 4).then(|| (t - 4).div_ceil(2))
    }
}

pub fn build_auxiliary(g: &Graph, d: &Decomposition) -> Result<AuxiliaryGraph, ColoringError> {
    let mut adj = vec![BTreeSet::new(); d.len()];
    for (u, v) in g.edges() {
        let p = d.part_of(u).ok_or(ColoringError::Uncovered(u))?;
        let q = d.part_of(v).ok_or(ColoringError::Uncovered(v))?;
        if p != q {
            adj[p - 1].insert(q - 1);
            adj[q - 1].insert(p - 1);
        }
    }
    let aux = AuxiliaryGraph { adj };
    let limit = d.t - 2;
    for i in 0..aux.order() {
        let degree = aux.back_degree(i);
        if degree > limit {
            return Err(ColoringError::BackDegree {
                part: i + 1,
                degree,
                limit,
            });
        }
    }
    Ok(aux)
}

/// Greedy in index order, smallest free hue from `1..=t-1`. Returns hue per
/// part, 0-based by part.
pub fn color_parts(aux: &AuxiliaryGraph, t: usize) -> Result<Vec<usize>, ColoringError> {
    let mut hues = vec![0usize; aux.order()];
    for i in 0..aux.order() {
        let taken: BTreeSet<usize> = aux.adj[i].range(..i).map(|&j| hues[j]).collect();
        hues[i] = (1..t)
            .find(|h| !taken.contains(h))
            .ok_or(ColoringError::PaletteExhausted(i + 1))?;
    }
    Ok(hues)
}

/// `(hue of part, 1 for side A / 2 for side B)` per vertex.
pub fn product_coloring(
    g: &Graph,
    d: &Decomposition,
    hues: &[usize],
) -> Result<ClusteredColoring, ColoringError> {
    let mut colors = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let p = d.part_of(v).ok_or(ColoringError::Uncovered(v))?;
        let side = if d.part(p).side_a.contains(v) { 1 } else { 2 };
        colors.push((hues[p - 1], side));
    }
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            let same_part = d.part_of(u) == d.part_of(v);
            if !same_part {
                return Err(ColoringError::Leak(u, v));
            }
        }
    }
    Ok(ClusteredColoring { t: d.t, colors })
}

/// Auxiliary graph, greedy hues, product coloring.
pub fn color_decomposition(
    g: &Graph,
    d: &Decomposition,
) -> Result<ClusteredColoring, ColoringError> {
    let aux = build_auxiliary(g, d)?;
    let hues = color_parts(&aux, d.t)?;
    product_coloring(g, d, &hues)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringRejection {
    #[error("coloring has {found} entries, graph has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("{used} colors used, at most {allowed} allowed")]
    TooManyColors { used: usize, allowed: usize },
    #[error("monochromatic component {component:?} has {size} vertices, bound is {bound}")]
    ComponentTooLarge {
        component: VertexSet,
        size: usize,
        bound: usize,
    },
}

impl ColoringRejection {
    pub fn is_mismatch(&self) -> bool {
        matches!(self, ColoringRejection::WrongLength { .. })
    }
}

/// Recomputes every monochromatic component and accepts iff at most `2t-2`
/// colors appear and no component exceeds `ceil((t-2)/2)` vertices.
pub fn verify_coloring(
    g: &Graph,
    coloring: &ClusteredColoring,
    t: usize,
) -> Result<ColoringReport, ColoringRejection> {
    let colors = &coloring.colors;
    if colors.len() != g.n() {
        return Err(ColoringRejection::WrongLength {
            expected: g.n(),
            found: colors.len(),
        });
    }
    let allowed = 2 * t.saturating_sub(1);
    let used = colors.iter().collect::<BTreeSet<_>>().len();
    if used > allowed {
        return Err(ColoringRejection::TooManyColors { used, allowed });
    }
    let bound = t.saturating_sub(2).div_ceil(2);

    let mut seen = vec![false; g.n()];
    let mut max_component = 0;
    let mut max_defect = 0;
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut members = vec![s];
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            let mut mono_degree = 0;
            for &w in g.neighbors(u) {
                if colors[w] == colors[u] {
                    mono_degree += 1;
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                    }
                }
            }
            max_defect = max_defect.max(mono_degree);
        }
        if members.len() > bound {
            return Err(ColoringRejection::ComponentTooLarge {
                size: members.len(),
                component: members.into_iter().collect(),
                bound,
            });
        }
        max_component = max_component.max(members.len());
    }
    Ok(ColoringReport {
        colors_used: used,
        max_component,
        max_defect,
    })
}

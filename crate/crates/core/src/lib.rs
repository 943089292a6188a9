//! Certifying clustered coloring.
//!
//! Given a graph `G` and `t >= 3`, [`pipeline::color_graph`] returns either
//!
//! * a coloring with at most `2t - 2` colors in which every monochromatic
//!   component has at most `ceil((t-2)/2)` vertices, or
//! * an odd `K_t` expansion found inside `G`, proving that `G` has an odd
//!   `K_t` minor.
//!
//! Both outcomes come with independent verifiers
//! ([`coloring::verify_coloring`], [`certificate::verify_certificate`]), and
//! [`oracle`] provides brute-force ground truth for tiny graphs.

pub mod certificate;
pub mod cli;
pub mod coloring;
pub mod decompose;
pub mod dot;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod par;
pub mod pipeline;
pub mod spanner;

pub use graph::{Graph, GraphError, TreeSubgraph, Vertex, VertexSet};
pub use par::Parallelism;

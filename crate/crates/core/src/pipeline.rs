//! The certifying front door: color a graph or exhibit an odd `K_t` minor.
//!
//! Each connected component is decomposed on its own (relabelled to
//! `0..k`). If any component gets stuck, the certificate from the lowest such
//! component is lifted back to global labels. Otherwise the per-component
//! colorings are concatenated; color reuse across components is harmless.
//! Every emitted artifact has passed its verifier.

use thiserror::Error;

use crate::certificate::{
    extract_certificate, verify_certificate, CertificateRejection, ExtractError,
    OddExpansionCertificate,
};
use crate::coloring::{
    color_decomposition, verify_coloring, ClusteredColoring, ColoringError, ColoringRejection,
    ColoringReport,
};
use crate::decompose::{decompose, DecomposeError, DecomposeOutcome};
use crate::graph::{Graph, Vertex};
use crate::par::{self, Parallelism};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("t must be at least 3, got {0}")]
    BadT(usize),
    #[error("decomposition failed: {0}")]
    Decompose(#[from] DecomposeError),
    #[error("coloring failed: {0}")]
    Coloring(#[from] ColoringError),
    #[error("certificate extraction failed: {0}")]
    Extract(#[from] ExtractError),
    #[error("coloring rejected by verifier: {0}")]
    ColoringRejected(#[from] ColoringRejection),
    #[error("certificate rejected by verifier: {0}")]
    CertificateRejected(#[from] CertificateRejection),
}

impl PipelineError {
    /// Self-verification failures, as opposed to construction failures.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            PipelineError::ColoringRejected(_) | PipelineError::CertificateRejected(_)
        )
    }
}

/// One connected component and its decomposition, in local labels.
#[derive(Debug, Clone)]
pub struct ComponentRun {
    pub graph: Graph,
    /// Local label to global vertex.
    pub to_global: Vec<Vertex>,
    pub outcome: DecomposeOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Colored {
        coloring: ClusteredColoring,
        report: ColoringReport,
    },
    Certified(OddExpansionCertificate),
}

#[derive(Debug, Clone)]
pub struct ColorRun {
    pub verdict: Verdict,
    pub components: Vec<ComponentRun>,
}

pub fn color_graph(g: &Graph, t: usize, mode: Parallelism) -> Result<ColorRun, PipelineError> {
    if t < 3 {
        return Err(PipelineError::BadT(t));
    }
    let pieces = g.connected_components(None);
    let runs = par::map(&pieces, mode, |piece| {
        let (graph, to_global) = g.induced_subgraph(piece);
        decompose(&graph, t).map(|outcome| ComponentRun {
            graph,
            to_global,
            outcome,
        })
    });
    let components = runs.into_iter().collect::<Result<Vec<_>, _>>()?;

    if let Some(run) = components
        .iter()
        .find(|r| matches!(r.outcome, DecomposeOutcome::Stuck(_)))
    {
        let DecomposeOutcome::Stuck(stuck) = &run.outcome else {
            unreachable!()
        };
        let local = extract_certificate(&run.graph, t, stuck)?;
        verify_certificate(&run.graph, &local)?;
        let cert = local.relabel(&run.to_global);
        verify_certificate(g, &cert)?;
        return Ok(ColorRun {
            verdict: Verdict::Certified(cert),
            components,
        });
    }

    let mut colors = vec![(0, 0); g.n()];
    for run in &components {
        let local = color_decomposition(&run.graph, run.outcome.decomposition())?;
        for (i, &c) in local.colors.iter().enumerate() {
            colors[run.to_global[i]] = c;
        }
    }
    let coloring = ClusteredColoring { t, colors };
    let report = verify_coloring(g, &coloring, t)?;
    Ok(ColorRun {
        verdict: Verdict::Colored { coloring, report },
        components,
    })
}

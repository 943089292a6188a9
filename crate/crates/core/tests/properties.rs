use std::collections::BTreeSet;

use oddcolor::certificate::verify_certificate;
use oddcolor::coloring::verify_coloring;
use oddcolor::decompose::{check_invariants, decompose, DecomposeOutcome};
use oddcolor::generators;
use oddcolor::graph::Parity;
use oddcolor::oracle::{has_odd_expansion, OracleBudget};
use oddcolor::pipeline::{color_graph, Verdict};
use oddcolor::{Graph, Parallelism, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| generators::gnp(n, p, seed))
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>())
        .prop_map(|(n, p, seed)| generators::connected_gnp(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn components_partition_vertices(g in arb_graph(40)) {
        let comps = g.connected_components(None);
        let mut seen = BTreeSet::new();
        for c in &comps {
            prop_assert!(g.is_connected_set(c));
            for v in c.iter() {
                prop_assert!(seen.insert(v));
            }
        }
        prop_assert_eq!(seen.len(), g.n());
        for (u, v) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(u) && c.contains(v)));
        }
    }

    #[test]
    fn parity_witness_is_valid(g in arb_connected(30)) {
        let all = VertexSet::full(g.n());
        match g.bipartition_or_odd_cycle(&all).unwrap() {
            Parity::Bipartite { side_a, side_b } => {
                prop_assert!(side_a.is_disjoint(&side_b));
                prop_assert_eq!(side_a.len() + side_b.len(), g.n());
                for (u, v) in g.edges() {
                    prop_assert!(side_a.contains(u) != side_a.contains(v));
                }
            }
            Parity::OddWalk(w) => {
                prop_assert!(w.len() % 2 == 1);
                for i in 0..w.len() {
                    prop_assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
                }
            }
        }
    }

    #[test]
    fn spanning_tree_spans(g in arb_connected(30)) {
        let all = VertexSet::full(g.n());
        let tree = g.spanning_tree(&all, None).unwrap();
        prop_assert_eq!(tree.vertices.len(), g.n());
        prop_assert_eq!(tree.edges.len(), g.n() - 1);
        for &(u, v) in &tree.edges {
            prop_assert!(g.has_edge(u, v));
        }
        let forest = Graph::from_edges(g.n(), tree.edges.iter().copied()).unwrap();
        prop_assert!(forest.is_connected());
    }

    #[test]
    fn every_verdict_verifies(g in arb_graph(40), t in 3usize..=6) {
        let run = color_graph(&g, t, Parallelism::Sequential).unwrap();
        match &run.verdict {
            Verdict::Colored { coloring, report } => {
                prop_assert_eq!(verify_coloring(&g, coloring, t).unwrap(), *report);
            }
            Verdict::Certified(cert) => {
                prop_assert_eq!(cert.t, t);
                prop_assert!(verify_certificate(&g, cert).is_ok());
                let text = serde_json::to_string(cert).unwrap();
                let back = serde_json::from_str(&text).unwrap();
                prop_assert!(verify_certificate(&g, &back).is_ok());
            }
        }
    }

    #[test]
    fn completed_decompositions_hold_invariants(g in arb_connected(40), t in 3usize..=6) {
        if let DecomposeOutcome::Completed(d) = decompose(&g, t).unwrap() {
            prop_assert!(d.covers(g.n()));
            prop_assert!(check_invariants(&g, &d).is_ok());
        }
    }

    #[test]
    fn bipartite_graphs_never_certify_at_three(
        n in 1usize..=50, p in 0.0..1.0f64, seed in any::<u64>()
    ) {
        let g = generators::random_bipartite(n, p, seed);
        let run = color_graph(&g, 3, Parallelism::Sequential).unwrap();
        prop_assert!(matches!(run.verdict, Verdict::Colored { .. }), "bipartite graph certified");
    }

    #[test]
    fn modes_agree(g in arb_graph(40), t in 3usize..=5) {
        let a = color_graph(&g, t, Parallelism::Sequential).unwrap();
        let b = color_graph(&g, t, Parallelism::Parallel).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_monotone_in_t(g in arb_graph(7)) {
        let budget = OracleBudget::default();
        let k3 = has_odd_expansion(&g, 3, budget, Parallelism::Sequential).unwrap();
        let k4 = has_odd_expansion(&g, 4, budget, Parallelism::Sequential).unwrap();
        prop_assert!(k3 || !k4);
        let bipartite = matches!(
            g.bipartition_or_odd_cycle(&VertexSet::full(g.n())),
            Ok(Parity::Bipartite { .. })
        ) && g.is_connected();
        if bipartite {
            prop_assert!(!k3);
        }
    }
}

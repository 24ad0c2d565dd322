use proptest::prelude::*;

use isk4plus::coloring::{color_isk4plus_free, verify_proper, ColoringOptions};
use isk4plus::detect::{clique_number, find_subdivision, find_subdivision_oracle, Pattern};
use isk4plus::{Budget, Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = vec![];
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

fn free(g: &Graph) -> bool {
    !find_subdivision(g, Pattern::K4Plus, Budget::UNLIMITED).is_found()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn graph6_roundtrip(g in graph(40)) {
        let s = g.to_graph6();
        let h = Graph::from_graph6(&s).unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(h.to_graph6(), s);
    }

    #[test]
    fn fast_detector_agrees_with_oracle(g in graph(10)) {
        for pattern in [Pattern::K4Plus, Pattern::K4] {
            let fast = find_subdivision(&g, pattern, Budget::UNLIMITED);
            let slow = find_subdivision_oracle(&g, pattern, 16).unwrap();
            prop_assert_eq!(fast.is_found(), slow.is_some());
            if let Some(w) = fast.found() {
                prop_assert!(w.verify(&g, pattern).is_ok());
            }
        }
    }

    #[test]
    fn freeness_is_hereditary(g in graph(10), drop in any::<u128>()) {
        if free(&g) {
            let keep = VertexSet::from_bits(g.vertices().bits() & !(drop << 1));
            let (h, _) = g.induced_subgraph(keep).unwrap();
            prop_assert!(free(&h));
        }
    }

    #[test]
    fn witness_survives_an_isolated_vertex(g in graph(10)) {
        // A witness found in G stays induced after adding an isolated vertex.
        if let Some(w) = find_subdivision(&g, Pattern::K4Plus, Budget::UNLIMITED).found() {
            let edges: Vec<_> = g.edges().collect();
            let h = Graph::from_edges(g.order() + 1, &edges).unwrap();
            prop_assert!(w.verify(&h, Pattern::K4Plus).is_ok());
            prop_assert!(!free(&h));
        }
    }

    #[test]
    fn complete_multipartite_is_free(sizes in proptest::collection::vec(1usize..5, 1..5)) {
        let g = Graph::complete_multipartite(&sizes).unwrap();
        prop_assert!(free(&g));
    }

    #[test]
    fn coloring_is_proper_and_within_bound(g in graph(12)) {
        if free(&g) {
            let (c, trace) = color_isk4plus_free(&g, ColoringOptions::default()).unwrap();
            prop_assert!(verify_proper(&g, &c).is_ok());
            prop_assert!(trace.fallbacks().is_empty());
            let omega = clique_number(&g, Budget::UNLIMITED).unwrap();
            prop_assert!(c.palette_size() >= omega);
        }
    }
}

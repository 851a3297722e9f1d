use exgraph::graph::{
    automorphisms, burnside_count, enumerate_colourings, has_odd_hole_or_antihole, independence_number,
    is_complete_multipartite, ColouringGroup, EnumerationOptions, Graph, GraphFile, Multipartition,
};
use exgraph::opr::seesaw::{theta_seesaw, SeesawParams};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges = pairs.iter().zip(&mask).filter(|(_, &on)| on).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph_strategy(9)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn independence_matches_brute_force(g in graph_strategy(10)) {
        prop_assert_eq!(independence_number(&g).unwrap(), brute_alpha(&g));
    }

    #[test]
    fn multipartite_verdict_is_sound(g in graph_strategy(8)) {
        match is_complete_multipartite(&g) {
            Multipartition::Parts(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    for (j, q) in parts.iter().enumerate() {
                        for &u in p {
                            for &v in q {
                                if u != v {
                                    prop_assert_eq!(g.has_edge(u, v), i != j);
                                }
                            }
                        }
                    }
                }
            }
            Multipartition::Forbidden([a, b, c]) => {
                let edges = [(a, b), (a, c), (b, c)].iter().filter(|&&(x, y)| g.has_edge(x, y)).count();
                prop_assert_eq!(edges, 1);
            }
        }
    }

    #[test]
    fn json_round_trip(g in graph_strategy(8)) {
        let text = GraphFile::from(&g).to_json();
        prop_assert_eq!(GraphFile::from_json(&text).unwrap().to_graph().unwrap(), g);
    }

    #[test]
    fn automorphisms_preserve_edges(g in graph_strategy(7)) {
        for perm in automorphisms(&g).unwrap() {
            prop_assert_eq!(g.permuted(&perm), g.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seesaw_value_is_sandwiched(g in graph_strategy(6)) {
        let params = SeesawParams::default().with_seed(3).with_restarts(4);
        let out = theta_seesaw::<f64>(&g, None, &params).unwrap();
        prop_assert!(out.report.value >= independence_number(&g).unwrap() as f64 - 1e-6);
        prop_assert!(out.report.value <= g.n() as f64 + 1e-9);
    }

    #[test]
    fn orbit_count_matches_burnside(g in graph_strategy(5)) {
        prop_assume!(g.edge_count() >= 2);
        let classes = enumerate_colourings(&g, 2, EnumerationOptions::default()).unwrap();
        let group = ColouringGroup::new(&g, 2).unwrap();
        prop_assert_eq!(classes.len() as u64, burnside_count(&group, true, u64::MAX).unwrap());
        let total: u64 = classes.iter().map(|c| c.orbit_size).sum();
        prop_assert_eq!(total, (1u64 << g.edge_count()) - 2);
    }
}

#[test]
fn odd_holes_and_antiholes() {
    assert!(has_odd_hole_or_antihole(&Graph::cycle(5).unwrap()).unwrap().is_some());
    assert!(has_odd_hole_or_antihole(&Graph::cycle(7).unwrap().complement()).unwrap().is_some());
    assert!(has_odd_hole_or_antihole(&Graph::cycle(6).unwrap()).unwrap().is_none());
    assert!(has_odd_hole_or_antihole(&Graph::complete_bipartite(3, 4)).unwrap().is_none());
}

#[test]
fn class_counts_of_small_cycles() {
    let count = |n| enumerate_colourings(&Graph::cycle(n).unwrap(), 2, EnumerationOptions::default()).unwrap().len();
    assert_eq!(count(5), 3);
    let c7bar = Graph::cycle(7).unwrap().complement();
    assert_eq!(enumerate_colourings(&c7bar, 2, EnumerationOptions::default()).unwrap().len(), 649);
}

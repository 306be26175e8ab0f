mod common;

use proptest::prelude::*;
use qst_core::{Extended, Graph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_is_twice_edge_count(g in common::arb_graph(1, 12)) {
        prop_assert_eq!(g.degree_vector().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn edge_list_round_trip(g in common::arb_graph(1, 12), w in -50.0f64..50.0) {
        let loops = [(0usize, w)];
        let g = Graph::with_loops(g.n(), g.edges(), loops).unwrap();
        let back = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn distance_matches_floyd_warshall(g in common::arb_graph(1, 12)) {
        let fw = common::floyd_warshall(&g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let d = g.distance(u, v).unwrap();
                prop_assert_eq!(d, g.distance(v, u).unwrap());
                let want = fw[u][v].map_or(Extended::Infinite, Extended::Finite);
                prop_assert_eq!(d, want);
            }
        }
    }
}

#[test]
fn path_and_bipartite_degree_multisets() {
    for n in 2..20 {
        let deg = Graph::path(n).unwrap().degree_vector();
        assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 2);
    }
    for a in 1..6 {
        for b in 1..6 {
            let mut deg = Graph::complete_bipartite(a, b).unwrap().degree_vector();
            deg.sort_unstable();
            let mut want: Vec<usize> = std::iter::repeat_n(b, a).chain(std::iter::repeat_n(a, b)).collect();
            want.sort_unstable();
            assert_eq!(deg, want);
        }
    }
}

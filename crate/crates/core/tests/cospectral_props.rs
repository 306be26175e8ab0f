mod common;

use proptest::prelude::*;
use qst_core::cospectral::adjacency_projectors;
use qst_core::{
    closed_walk_counts, cospectrality, find_involution_pairing, sign_pattern, verify_involution, Graph, GroupSign,
    HamiltonianSpec, Model,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn walk_and_projector_witnesses_agree(g in common::arb_graph(2, 10)) {
        let projectors = adjacency_projectors(&g).unwrap();
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let r = cospectrality(&g, u, v).unwrap();
                prop_assert!(r.consistent(), "pair ({u},{v}): {r:?}");
                match r.first_divergence {
                    Some(div) => prop_assert_eq!(r.order.finite(), Some(div.k as u64 - 1)),
                    None => prop_assert!(r.order.is_infinite()),
                }
                if r.order.is_infinite() {
                    // Simple eigenvalues: psi(u) = +-psi(v) outright. Degenerate
                    // eigenspaces only admit such a basis, witnessed by equal diagonals.
                    let pattern = sign_pattern(&projectors, u, v).unwrap();
                    for (p, sign) in projectors.iter().zip(&pattern.groups) {
                        if p.rank == 1 {
                            prop_assert!(*sign != GroupSign::Mixed, "pair ({u},{v})");
                        } else {
                            prop_assert!((p.matrix.get(u, u) - p.matrix.get(v, v)).abs() <= 1e-7);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn involution_implies_infinite_cospectrality(g in common::arb_graph(2, 10)) {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if let Some(sigma) = find_involution_pairing(&g, u, v).unwrap() {
                    prop_assert!(verify_involution(&g, &sigma).unwrap());
                    prop_assert_eq!(sigma[u], v);
                    prop_assert!(cospectrality(&g, u, v).unwrap().order.is_infinite());
                }
            }
        }
    }

    #[test]
    fn involution_search_matches_brute_force(g in common::arb_graph(2, 7)) {
        let all = common::brute_force_involutions(&g);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let exists = all.iter().any(|p| p[u] == v);
                prop_assert_eq!(find_involution_pairing(&g, u, v).unwrap().is_some(), exists);
            }
        }
    }

    #[test]
    fn walk_counts_exact_and_float(g in common::arb_graph(1, 8)) {
        let a = g.adjacency_matrix();
        let n = g.n();
        let deg = g.degree_vector();
        for x in 0..n {
            let counts = closed_walk_counts(&g, x, 12).unwrap();
            prop_assert_eq!(counts[2], deg[x] as i128);
            let mut row: Vec<f64> = (0..n).map(|i| if i == x { 1.0 } else { 0.0 }).collect();
            for k in 1..=12 {
                row = a.mul_vec(&row);
                prop_assert_eq!(counts[k], row[x].round() as i128);
                prop_assert_eq!(counts[k], common::matrix_power_diagonal(&g, x, k));
            }
        }
    }

    #[test]
    fn hamiltonians_exactly_symmetric(g in common::arb_graph(2, 12), k in -100.0f64..100.0, w in -5.0f64..5.0) {
        let g = Graph::with_loops(g.n(), g.edges(), [(1usize, w)]).unwrap();
        let deg = g.degree_vector();
        for model in [Model::Adjacency, Model::Laplacian, Model::SignlessLaplacian, Model::Generalized(k),
                      Model::LoopPerturbed { u: 0, v: 1, q: k }] {
            let h = HamiltonianSpec::new(g.clone(), model).unwrap().matrix();
            for i in 0..g.n() {
                for j in 0..g.n() {
                    prop_assert_eq!(h.get(i, j).to_bits(), h.get(j, i).to_bits());
                }
            }
        }
        let h = HamiltonianSpec::new(g.clone(), Model::Generalized(k)).unwrap().matrix();
        for i in 0..g.n() {
            let loop_w = if i == 1 { w } else { 0.0 };
            prop_assert_eq!(h.get(i, i), -(k * deg[i] as f64 + loop_w));
            for j in 0..g.n() {
                if i != j {
                    prop_assert_eq!(h.get(i, j), if g.has_edge(i, j) { -1.0 } else { 0.0 });
                }
            }
        }
    }
}

#[test]
fn every_small_graph_pair_is_consistent() {
    // Exhaustive over all graphs on 5 labelled vertices.
    let n = 5;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
        let g = Graph::new(n, edges).unwrap();
        for &(u, v) in &pairs {
            assert!(cospectrality(&g, u, v).unwrap().consistent(), "mask {mask:b} pair ({u},{v})");
        }
    }
}

use proptest::prelude::*;
use qst_core::{
    eigendecompose, k_threshold_two_class, peak_fidelity, q_threshold, readout_time_bound, Extended, Graph,
    HamiltonianSpec, Model, PeakStrategy, ThresholdInput,
};

fn arb_input() -> impl Strategy<Value = ThresholdInput> {
    (0.001f64..0.999, 1u64..20, 1u64..8, prop_oneof![Just(None), (0u64..10).prop_map(Some)]).prop_map(
        |(epsilon, m, d, extra)| ThresholdInput {
            epsilon,
            m,
            d,
            c: extra.map_or(Extended::Infinite, |e| Extended::Finite(d + e)),
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monotone_in_epsilon_and_degree(input in arb_input(), shrink in 0.1f64..0.99, bump in 1u64..5) {
        let base = q_threshold(input).unwrap();
        let smaller_eps = q_threshold(ThresholdInput { epsilon: input.epsilon * shrink, ..input }).unwrap();
        prop_assert!(smaller_eps.q_min >= base.q_min);
        let bigger_m = q_threshold(ThresholdInput { m: input.m + bump, ..input }).unwrap();
        prop_assert!(bigger_m.q_min >= base.q_min);
        prop_assert!(base.q_min > 0.0 && base.t_bound > 0.0);
    }

    #[test]
    fn infinite_cospectrality_identity(epsilon in 0.001f64..0.999, m in 1u64..50, d in 1u64..10) {
        let r = q_threshold(ThresholdInput { epsilon, m, c: Extended::Infinite, d }).unwrap();
        prop_assert_eq!((r.exponents.epsilon_root, r.exponents.degree_excess), (2.0, 0.5));
        let want = 16.0 * (m as f64).powf(1.5) / epsilon.sqrt();
        prop_assert!((r.q_min - want).abs() <= 1e-12 * want);
        prop_assert_eq!(r.t_bound, readout_time_bound(r.q_min, m, d));
    }
}

#[test]
fn guarantee_holds_at_ceiling_of_threshold() {
    let p6 = Graph::path(6).unwrap();
    let r = k_threshold_two_class(&p6, 0, 5, 0.1).unwrap();
    let k = r.k_min.unwrap().ceil();
    let d = eigendecompose(&HamiltonianSpec::new(p6, Model::Generalized(k)).unwrap().matrix()).unwrap();
    let peak = peak_fidelity(&d, 0, 5, PeakStrategy::default()).unwrap();
    assert!(peak.fidelity > 0.9);
    // |Q| = k |d1 - d2| = k on the path
    assert!(peak.t_star < readout_time_bound(k, 2, 5));
}

use proptest::prelude::*;
use stein_steps::exactmath::ratio;
use stein_steps::hamming::{stein_bound_binomial_half, HammingModel, MixingDistribution};
use stein_steps::sn_plancherel::{partitions_of, Partition};

fn mixing(n: u32) -> impl Strategy<Value = MixingDistribution> {
    prop::collection::vec(0u32..6, n as usize).prop_filter_map("all zero", move |raw| {
        let total: u32 = raw.iter().sum();
        if total == 0 {
            return None;
        }
        let mut w = vec![ratio(0, 1)];
        w.extend(raw.iter().map(|&x| ratio(x as i64, total as i64)));
        MixingDistribution::new(w).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_flip_is_never_beaten((n, b) in (3u32..12).prop_flat_map(|n| (Just(n), mixing(n)))) {
        let best = stein_bound_binomial_half(n, &MixingDistribution::point_mass(n, 1).unwrap()).unwrap();
        if let Ok(r) = stein_bound_binomial_half(n, &b) {
            prop_assert!(best.dominates(&r));
        }
    }

    #[test]
    fn mixed_kernels_are_reversible((n, b) in (1u32..8).prop_flat_map(|n| (Just(n), mixing(n))), q in 2u32..5) {
        let model = HammingModel::from_params(n, q, b).unwrap();
        let m = model.transition_mixed().unwrap();
        prop_assert!(m.is_nonnegative() && m.is_row_stochastic());
        prop_assert!(m.satisfies_detailed_balance(&model.plancherel_pmf()));
    }

    #[test]
    fn partition_text_round_trips(n in 1u32..14, pick in any::<prop::sample::Index>()) {
        let all = partitions_of(n);
        let p = pick.get(&all);
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, p);
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
    }
}

//! Invariants of the analytic model, checked with proptest.

use proptest::prelude::*;
use softfusion::*;

fn stats_strategy(max_users: usize) -> impl Strategy<Value = FusionStatistics64> {
    stats_with_snr(max_users, 0.5)
}

fn stats_with_snr(max_users: usize, max_snr: f64) -> impl Strategy<Value = FusionStatistics64> {
    (1..=max_users).prop_flat_map(move |m| {
        (
            prop::collection::vec(50.0..500.0_f64, m),
            prop::collection::vec(0.0..max_snr, m),
            prop::sample::select(vec![50usize, 100, 300, 1000]),
        )
            .prop_filter_map("needs signal", |(mu0, snr, k)| {
                let theta: Vec<f64> = mu0.iter().zip(&snr).map(|(m, s)| m * s).collect();
                let st = FusionStatistics::from_means(k, mu0, theta).ok()?;
                st.has_signal().then_some(st)
            })
    })
}

fn raw_weights(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0_f64, m).prop_filter("nonzero", |w| w.iter().any(|&x| x > 1e-6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn q_tail_is_decreasing(a in -8.0..8.0_f64, d in 1e-3..2.0_f64) {
        prop_assert!(q_tail(a + d) <= q_tail(a));
        // Below about -5 the step falls under one ulp of 1.0.
        if a > -5.0 {
            prop_assert!(q_tail(a + d) < q_tail(a));
        }
    }

    #[test]
    fn q_tail_inverse_round_trip(p in 1e-12_f64..(1.0 - 1e-12)) {
        let x = q_tail_inverse(p).unwrap();
        prop_assert!((q_tail(x) - p).abs() <= 1e-10);
    }

    #[test]
    fn scheme_weights_are_unit_and_nonnegative(st in stats_strategy(12)) {
        let m = st.len();
        for w in [
            weights_egc(m).unwrap(),
            weights_mrc_from_snr(&st.snrs()).unwrap(),
            weights_ndc(&st).unwrap(),
            weights_mdc(&st).unwrap(),
        ] {
            prop_assert!(w.as_slice().iter().all(|&x| x >= 0.0));
            prop_assert!((w.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn pd_is_scale_invariant(
        (st, w) in stats_strategy(8).prop_flat_map(|st| { let m = st.len(); (Just(st), raw_weights(m)) }),
        c in 1e-3..1e3_f64,
        pf in 0.01..0.99_f64,
    ) {
        let scaled: Vec<f64> = w.iter().map(|x| x * c).collect();
        let a = pd_given_pf(&normalize(&w).unwrap(), &st, pf).unwrap();
        let b = pd_given_pf(&normalize(&scaled).unwrap(), &st, pf).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn roc_is_increasing_and_above_chance(
        (st, w) in stats_strategy(8).prop_flat_map(|st| { let m = st.len(); (Just(st), raw_weights(m)) }),
        pf in 0.01..0.9_f64,
        dp in 0.01..0.09_f64,
    ) {
        let w = normalize(&w).unwrap();
        let lo = pd_given_pf(&w, &st, pf).unwrap();
        let hi = pd_given_pf(&w, &st, pf + dp).unwrap();
        prop_assert!(hi >= lo);
        if hi < 1.0 - 1e-6 {
            prop_assert!(hi > lo);
        }
        prop_assert!(lo >= pf - 1e-10);
    }

    #[test]
    fn pf_pd_round_trip(
        (st, w) in stats_with_snr(8, 0.1).prop_flat_map(|st| { let m = st.len(); (Just(st), raw_weights(m)) }),
        pf in 0.01..0.99_f64,
    ) {
        let w = normalize(&w).unwrap();
        let pd = pd_given_pf(&w, &st, pf).unwrap();
        // Near Pd = 1 the inverse amplifies rounding by φ(Q⁻¹(pf)) / φ(Q⁻¹(pd)).
        prop_assume!(pd < 1.0 - 1e-6);
        prop_assert!((pf_given_pd(&w, &st, pd).unwrap() - pf).abs() <= 1e-9);
    }

    #[test]
    fn or_rule_meets_pf_and_stays_in_range(st in stats_strategy(10), pf in 0.001..0.99_f64) {
        let (gpf, gpd) = or_rule_hdf(&st, pf).unwrap();
        prop_assert!((gpf - pf).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&gpd));
        prop_assert!(gpd >= pf - 1e-9);
    }

    #[test]
    fn random_scenarios_keep_invariants(users in 1..20usize, seed in any::<u64>()) {
        let s: Scenario64 = generate_scenario(&ScenarioSpec::default().with_users(users), seed).unwrap();
        let st = statistics(&s);
        for i in 0..users {
            prop_assert_eq!(st.mu1()[i], st.mu0()[i] + st.theta()[i]);
            prop_assert!(st.var1()[i] >= st.var0()[i]);
        }
    }
}

#[test]
fn deflection_weights_beat_random_directions() {
    use rand::Rng;
    let mut rng = softfusion::seeding::rng_from_seed(31);
    let spec = ScenarioSpec::default().with_users(6);
    for seed in 0..5 {
        let st = statistics(&generate_scenario::<f64>(&spec, seed).unwrap());
        let ndc = weights_ndc(&st).unwrap();
        let mdc = weights_mdc(&st).unwrap();
        let d_ndc = deflection(ndc.as_slice(), st.theta(), st.var0());
        let d_mdc = deflection(mdc.as_slice(), st.theta(), st.var1());
        for _ in 0..1000 {
            let raw: Vec<f64> = (0..6).map(|_| rng.random::<f64>()).collect();
            let w = normalize(&raw).unwrap();
            assert!(d_ndc >= deflection(w.as_slice(), st.theta(), st.var0()) * (1.0 - 1e-12));
            assert!(d_mdc >= deflection(w.as_slice(), st.theta(), st.var1()) * (1.0 - 1e-12));
        }
    }
}

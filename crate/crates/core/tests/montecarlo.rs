use littlewood_core::exactcount::{union_prob, CoeffDist};
use littlewood_core::lclt::asymptotic_prob;
use littlewood_core::montecarlo::{estimate, wilson_interval, Event, Z95};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn estimates_ignore_scheduling(seed in any::<u64>(), n in 1usize..40, threads in 2usize..6) {
        let dist = CoeffDist::uniform_ternary();
        let a = in_pool(1, || estimate(Event::DoubleRoot, n, &dist, 2_000, seed).unwrap());
        let b = in_pool(threads, || estimate(Event::DoubleRoot, n, &dist, 2_000, seed).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn wilson_interval_is_ordered(hits in 0u64..1000, extra in 0u64..1000) {
        let trials = hits + extra + 1;
        let (lo, hi) = wilson_interval(hits, trials, Z95);
        let p = hits as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}

#[test]
fn wilson_coverage_at_degree_three() {
    let dist = CoeffDist::uniform_pm1();
    let covered = (0..200u64)
        .filter(|&rep| estimate(Event::DoubleRoot, 3, &dist, 400, 1_000 + rep).unwrap().contains(0.25))
        .count();
    assert!(covered >= 180, "{covered} / 200");
}

#[test]
fn root_at_two_only_for_the_zero_draw() {
    let est = estimate(Event::RootAtInteger(2), 5, &CoeffDist::uniform_ternary(), 1_000_000, 5).unwrap();
    assert_eq!(est.hits, est.all_zero);
    assert!(est.contains(3f64.powi(-6)), "{est:?}");
}

#[test]
fn frequencies_follow_the_asymptotic_trend() {
    let dist = CoeffDist::uniform_pm1();
    for (n, trials) in [(103, 200_000u64), (199, 100_000), (399, 50_000)] {
        let est = estimate(Event::DoubleRoot, n, &dist, trials, n as u64).unwrap();
        let asym = asymptotic_prob(n, &dist).unwrap();
        let exact = union_prob(n, &dist).unwrap().to_f64().unwrap();
        assert!(est.contains(exact), "n = {n}: {est:?} vs exact {exact}");
        assert!(est.contains(asym), "n = {n}: {est:?} vs asymptotic {asym}");
    }
}

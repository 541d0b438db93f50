mod common;

use common::ratio;
use littlewood_core::exactcount::{joint_atom, CoeffDist, JointAtomQuery, Sign};
use littlewood_core::lclt::{
    asymptotic_prob, cf_gap_sup, cf_poly_pair, gaussian_point_mass, l_constant, lattice_point_prob, moments,
    InversionConfig,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn exact_minus_atom(n: usize, p: (i64, i64)) -> f64 {
    let dist = CoeffDist::pm1(ratio(p.0, p.1)).unwrap();
    joint_atom(&JointAtomQuery { n, dist, sign: Sign::Minus, target: (0, 0) }).to_f64().unwrap()
}

#[test]
fn inversion_is_exact_on_the_nyquist_grid() {
    for p in [(1, 2), (1, 3), (2, 3)] {
        for n in (3..100).step_by(4) {
            let cfg = InversionConfig::for_degree(n);
            let got = lattice_point_prob(n, p.0 as f64 / p.1 as f64, &cfg).unwrap();
            let want = exact_minus_atom(n, p);
            assert!((got - want).abs() < 1e-10, "n = {n}, p = {p:?}: {got} vs {want}");
        }
    }
}

#[test]
fn coarser_grids_are_refused() {
    let n = 11;
    let (g1, g2) = InversionConfig::required(n);
    let mut cfg = InversionConfig::for_degree(n);
    cfg.grid1 = g1 - 1;
    assert!(lattice_point_prob(n, 0.5, &cfg).is_err());
    cfg.grid1 = g1;
    cfg.grid2 = g2 - 1;
    assert!(lattice_point_prob(n, 0.5, &cfg).is_err());
    // finer grids stay exact
    cfg.grid1 = g1 + 5;
    cfg.grid2 = g2 + 17;
    let got = lattice_point_prob(n, 0.5, &cfg).unwrap();
    assert!((got - exact_minus_atom(n, (1, 2))).abs() < 1e-12);
}

proptest! {
    #[test]
    fn characteristic_function_is_bounded_and_hermitian(
        t1 in -1.0f64..1.0, t2 in -1.0f64..1.0, n in 1usize..300, p in 0.0f64..=1.0,
    ) {
        let a = cf_poly_pair([t1, t2], n, p).unwrap();
        let b = cf_poly_pair([-t1, -t2], n, p).unwrap();
        prop_assert!(a.norm() <= 1.0 + 1e-12);
        prop_assert!((a - b.conj()).norm() < 1e-9);
    }

    #[test]
    fn l_constant_has_period_four(n in 1usize..500, a in 1i64..=4, z in 0i64..=4, c in 1i64..=4) {
        let s = a + z + c;
        let dist = CoeffDist::from_fractions((a, s), (z, s), (c, s)).unwrap();
        prop_assert_eq!(l_constant(n, &dist).unwrap(), l_constant(n + 4, &dist).unwrap());
    }
}

#[test]
fn characteristic_function_at_lattice_periods() {
    // both coordinates are even when 4 | n + 1, so shifts by 1/2 are periods
    for n in [3, 7, 19, 63] {
        for &(t1, t2) in &[(0.1, 0.03), (-0.2, 0.41), (0.37, -0.12)] {
            let a = cf_poly_pair([t1, t2], n, 0.3).unwrap();
            let b = cf_poly_pair([t1 + 0.5, t2], n, 0.3).unwrap();
            let c = cf_poly_pair([t1, t2 + 0.5], n, 0.3).unwrap();
            assert!((a - b).norm() < 1e-9 && (a - c).norm() < 1e-9);
        }
    }
}

#[test]
fn gaussian_mass_approaches_the_lattice_probability() {
    let mut prev = f64::INFINITY;
    let mut prev_asym = f64::INFINITY;
    for n in [19, 39, 79, 99] {
        let dist = CoeffDist::uniform_pm1();
        let g = gaussian_point_mass(&moments(n, &dist, Sign::Minus).unwrap()).unwrap();
        let gap = (g / exact_minus_atom(n, (1, 2)) - 1.0).abs();
        assert!(gap < prev, "n = {n}: {gap}");
        prev = gap;
        // for mean-zero laws the asymptotic value counts both of +1 and -1
        let asym = asymptotic_prob(n, &dist).unwrap();
        let asym_gap = (asym / (2.0 * g) - 1.0).abs();
        assert!(asym_gap < prev_asym, "n = {n}: {asym_gap}");
        prev_asym = asym_gap;
    }
    assert!(prev < 0.02 && prev_asym < 0.05, "{prev} {prev_asym}");
}

#[test]
fn cf_gap_stays_bounded_after_scaling() {
    let base = cf_gap_sup(16, 0.5, 64).unwrap() * 16f64.powf(0.25);
    assert!(base > 0.0);
    for n in [64, 256, 1024] {
        let v = cf_gap_sup(n, 0.5, 64).unwrap() * (n as f64).powf(0.25);
        assert!(v <= 10.0 * base, "n = {n}: {v} vs {base}");
    }
}

#[test]
fn moment_closed_forms_match_tables_up_to_sixty() {
    use littlewood_core::exactcount::joint_table;
    for dist in [CoeffDist::uniform_pm1(), CoeffDist::from_fractions((1, 4), (0, 1), (3, 4)).unwrap()] {
        for n in (1..=60).step_by(7) {
            for sign in [Sign::Plus, Sign::Minus] {
                let t = joint_table(n, &dist, sign);
                let m = moments(n, &dist, sign).unwrap();
                assert_eq!(t.mean(), m.mu);
                assert_eq!(t.covariance(), m.sigma);
            }
        }
    }
}

mod common;

use std::collections::BTreeMap;

use common::{ratio, value_and_slope, vectors};
use littlewood_core::exactcount::{
    derivative_root_at_i_prob, exhaustive_census, joint_atom, joint_atom_dp, joint_table, max_atom_weighted,
    root_at_integer_prob, spectral_null_count, subset_atom, union_prob, Alphabet, CoeffDist, JointAtomQuery, Sign,
};
use littlewood_core::lclt::moments;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: usize, dist: &CoeffDist, sign: Sign) -> JointAtomQuery {
    JointAtomQuery { n, dist: dist.clone(), sign, target: (0, 0) }
}

fn pow2(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

#[test]
fn census_counts_match_joint_atoms() {
    let dist = CoeffDist::uniform_pm1();
    for n in 1..=12 {
        let c = exhaustive_census(n, Alphabet::Pm1).unwrap();
        let scale = pow2(n + 1);
        let at = |sign| (joint_atom(&q(n, &dist, sign)) * &scale).to_integer();
        assert_eq!(BigInt::from(c.at_minus1.clone()), at(Sign::Minus), "n = {n}");
        assert_eq!(BigInt::from(c.at_plus1.clone()), at(Sign::Plus), "n = {n}");
        let u = union_prob(n, &dist).unwrap() * &scale;
        assert!(u.is_integer());
        assert_eq!(BigInt::from(c.special_union.clone()), u.to_integer(), "n = {n}");
    }
}

#[test]
fn spectral_null_count_is_the_plus_one_atom() {
    let dist = CoeffDist::uniform_pm1();
    for n in 1..=50 {
        let lhs = BigRational::from_integer(spectral_null_count(n + 1).into()) / pow2(n + 1);
        assert_eq!(lhs, joint_atom(&q(n, &dist, Sign::Plus)), "n = {n}");
    }
}

#[test]
fn atoms_vanish_unless_four_divides_n_plus_one() {
    for p in [ratio(1, 2), ratio(1, 3), ratio(4, 5)] {
        let dist = CoeffDist::pm1(p).unwrap();
        for n in 1..=40 {
            for sign in [Sign::Plus, Sign::Minus] {
                let a = joint_atom(&q(n, &dist, sign));
                if (n + 1) % 4 != 0 {
                    assert!(a.is_zero(), "n = {n}");
                } else {
                    assert!(a > BigRational::zero(), "n = {n}");
                }
            }
        }
    }
}

#[test]
fn three_routes_to_the_atom_agree() {
    for p in [ratio(1, 2), ratio(1, 3), ratio(2, 3)] {
        let dist = CoeffDist::pm1(p.clone()).unwrap();
        for n in [3, 7, 11, 15, 27, 47] {
            for sign in [Sign::Plus, Sign::Minus] {
                let a = joint_atom(&q(n, &dist, sign));
                assert_eq!(a, joint_atom_dp(&q(n, &dist, sign)));
                assert_eq!(a, subset_atom(n, &dist, sign, (0, 0)).unwrap());
                if n <= 15 {
                    assert_eq!(a, common::enumerated_double_root_prob(n, &p, sign.value()));
                }
            }
        }
    }
}

fn table_map(n: usize, dist: &CoeffDist, sign: Sign) -> BTreeMap<(i64, i64), BigRational> {
    let t = joint_table(n, dist, sign);
    t.iter().map(|(&k, _)| (k, t.prob(k.0, k.1))).collect()
}

fn dist_strategy() -> impl Strategy<Value = CoeffDist> {
    (0i64..=6, 0i64..=6, 0i64..=6)
        .prop_filter("two support points", |&(a, b, c)| (a > 0) as u8 + (b > 0) as u8 + (c > 0) as u8 >= 2)
        .prop_map(|(a, b, c)| {
            let s = a + b + c;
            CoeffDist::from_fractions((a, s), (b, s), (c, s)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_laws_give_reflected_tables(n in 1usize..=14, a in 1i64..=5, z in 0i64..=5) {
        // xi_j -> (-1)^j xi_j maps (P(-1), P'(-1)) to (P(1), -P'(1))
        let s = 2 * a + z;
        let dist = CoeffDist::from_fractions((a, s), (z, s), (a, s)).unwrap();
        let reflected: BTreeMap<_, _> =
            table_map(n, &dist, Sign::Minus).into_iter().map(|((a, b), p)| ((a, -b), p)).collect();
        prop_assert_eq!(table_map(n, &dist, Sign::Plus), reflected);
        prop_assert_eq!(
            joint_atom(&q(n, &dist, Sign::Plus)),
            joint_atom(&q(n, &dist, Sign::Minus))
        );
    }

    #[test]
    fn table_moments_match_closed_forms(n in 1usize..=30, dist in dist_strategy(), plus in any::<bool>()) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let t = joint_table(n, &dist, sign);
        let m = moments(n, &dist, sign).unwrap();
        prop_assert_eq!(t.mean(), m.mu);
        prop_assert_eq!(t.covariance(), m.sigma);
    }

    #[test]
    fn table_masses_sum_to_one(n in 0usize..=20, dist in dist_strategy()) {
        let t = joint_table(n, &dist, Sign::Minus);
        let total = t.iter().fold(BigRational::zero(), |acc, (&(a, b), _)| acc + t.prob(a, b));
        prop_assert!(total.is_one());
    }

    #[test]
    fn fast_paths_agree_with_the_dp(n in 1usize..=40, dist in dist_strategy(), a in -3i64..=3, b in -3i64..=3) {
        for sign in [Sign::Plus, Sign::Minus] {
            let query = JointAtomQuery { n, dist: dist.clone(), sign, target: (a, b) };
            prop_assert_eq!(joint_atom(&query), joint_atom_dp(&query));
        }
    }
}

/// Weight of one ternary vector under `dist`, as an exact rational.
fn weight(v: &[i64], dist: &CoeffDist) -> BigRational {
    v.iter()
        .map(|&x| match x {
            -1 => dist.p_minus().clone(),
            0 => dist.p_zero().clone(),
            _ => dist.p_plus().clone(),
        })
        .product()
}

#[test]
fn ternary_probabilities_match_enumeration() {
    let dist = CoeffDist::from_fractions((1, 5), (1, 2), (3, 10)).unwrap();
    for n in 1..=7 {
        let mut union = BigRational::zero();
        let mut deriv_i = BigRational::zero();
        let mut at_two = BigRational::zero();
        for v in vectors(&[-1, 0, 1], n + 1) {
            let w = weight(&v, &dist);
            let d0 = v[0] == 0 && v[1] == 0;
            if d0 || value_and_slope(&v, 1) == (0, 0) || value_and_slope(&v, -1) == (0, 0) {
                union += &w;
            }
            // P'(i) = sum j c_j i^(j-1)
            let (mut re, mut im) = (0i64, 0i64);
            for (j, &c) in v.iter().enumerate().skip(1) {
                let t = j as i64 * c;
                match (j - 1) % 4 {
                    0 => re += t,
                    1 => im += t,
                    2 => re -= t,
                    _ => im -= t,
                }
            }
            if re == 0 && im == 0 {
                deriv_i += &w;
            }
            if v.iter().rev().fold(0i64, |acc, &c| 2 * acc + c) == 0 {
                at_two += &w;
            }
        }
        assert_eq!(union_prob(n, &dist).unwrap(), union, "n = {n}");
        assert_eq!(derivative_root_at_i_prob(n, &dist), deriv_i, "n = {n}");
        assert_eq!(root_at_integer_prob(n, &dist, 2).unwrap(), at_two, "n = {n}");
    }
}

#[test]
fn census_totals_are_consistent() {
    for n in 1..=8 {
        let c = exhaustive_census(n, Alphabet::Ternary).unwrap();
        let dist = CoeffDist::uniform_ternary();
        let total = BigRational::from_integer(BigInt::from(c.total.clone()));
        // the zero polynomial is in the union but not in the census classes
        let from_census = BigRational::from_integer(BigInt::from(c.special_union.clone() + c.all_zero.clone())) / &total;
        assert_eq!(from_census, union_prob(n, &dist).unwrap(), "n = {n}");
        assert!(c.special_union <= c.repeated);
    }
}

#[test]
fn max_atom_matches_enumeration() {
    let dist = CoeffDist::uniform_pm1();
    for weights in [vec![1, 2, 3, 4, 5, 6], vec![1, 3, 4, 9, 10], vec![2, 5, 7, 8]] {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for v in vectors(&[-1, 1], weights.len()) {
            *counts.entry(v.iter().zip(&weights).map(|(a, b)| a * b).sum()).or_default() += 1;
        }
        let best = *counts.values().max().unwrap() as i64;
        assert_eq!(max_atom_weighted(&weights, &dist).unwrap(), ratio(best, 1 << weights.len()));
    }
}

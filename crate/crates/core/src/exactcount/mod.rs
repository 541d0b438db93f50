//! Exact finite-`n` probabilities and counts.
//!
//! Everything here is rational or big-integer arithmetic: exhaustive
//! censuses, spectral-null counts, atoms of `(P(e), P'(e))` for `e = +-1`, the
//! probability of a double root at `-1`, `0` or `+1`, and atoms of weighted
//! sums of coefficients.

mod census;
mod dist;
mod dp;
mod qbinom;
mod subset;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use census::{exhaustive_census, exhaustive_census_with_budget, hunt_exhaustive, Alphabet, CensusResult, HuntReport};
pub use dist::CoeffDist;
pub use dp::{items_atom, items_table, JointTable};
pub use qbinom::{gaussian_binomial, spectral_null_count, subset_sum_count};
pub use subset::subset_atom;

/// The evaluation point `e` in `(P(e), P'(e))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!("sign must be +1 or -1, got {s:?}"))),
        }
    }
}

/// `P(P(e) = a, P'(e) = b)` for a degree-`n` random polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointAtomQuery {
    pub n: usize,
    pub dist: CoeffDist,
    pub sign: Sign,
    pub target: (i64, i64),
}

/// Coefficient of `xi_j` in `(P(e), P'(e))`, for `j = 0..=n`.
pub fn sign_items(n: usize, sign: Sign) -> Vec<(i64, i64)> {
    let e = sign.value();
    (0..=n as i64)
        .map(|j| {
            let ej = if j % 2 == 0 { 1 } else { e };
            // j e^(j-1) = j e^j e, since e = +-1
            (ej, j * ej * e)
        })
        .collect()
}

/// Exact `P(P(e) = a, P'(e) = b)`.
///
/// Laws on `{-1, 1}` go through Gaussian-binomial coefficients; laws with
/// mass at zero through the two-dimensional value DP, restricted to cells
/// that can still reach the target.
pub fn joint_atom(q: &JointAtomQuery) -> BigRational {
    let (a, b) = q.target;
    let len = q.n as i64 + 1;
    if a.abs() > len || b.abs() > len * (len - 1) / 2 {
        return BigRational::zero();
    }
    if q.dist.is_pm1() {
        qbinom::pm1_joint_atom(q.n, &q.dist, q.sign, q.target)
    } else {
        joint_atom_dp(q)
    }
}

/// [`joint_atom`] computed by the value DP regardless of the law.
pub fn joint_atom_dp(q: &JointAtomQuery) -> BigRational {
    items_atom(&sign_items(q.n, q.sign), &q.dist, q.target)
}

/// Full exact law of `(P(e), P'(e))`.
pub fn joint_table(n: usize, dist: &CoeffDist, sign: Sign) -> JointTable {
    items_table(&sign_items(n, sign), dist)
}

fn origin_atom(items: &[(i64, i64)], dist: &CoeffDist) -> BigRational {
    items_atom(items, dist, (0, 0))
}

/// Exact `P(D_{-1} u D_0 u D_1)`, where `D_z` is the event that `z` is a
/// double root (the all-zero polynomial belongs to every `D_z`).
///
/// Inclusion-exclusion over the three events:
/// - `P(D_0) = p_zero^2`, since `D_0 = {xi_0 = xi_1 = 0}`;
/// - `P(D_1 n D_{-1})` splits into independent even- and odd-index
///   constraints `sum xi_j = 0 = sum j xi_j` over each class;
/// - intersections with `D_0` fix `xi_0 = xi_1 = 0` and constrain the rest.
pub fn union_prob(n: usize, dist: &CoeffDist) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::Domain("union_prob needs n >= 1".into()));
    }
    let atom = |sign| {
        joint_atom(&JointAtomQuery { n, dist: dist.clone(), sign, target: (0, 0) })
    };
    let p_plus = atom(Sign::Plus);
    let p_minus = atom(Sign::Minus);
    let p_both = both_signs_atom(n, dist);
    let mut total = &p_plus + &p_minus - &p_both;

    let p0 = dist.p_zero();
    if !p0.is_zero() {
        let pz = p0 * p0;
        // D_0 n D_e: xi_0 = xi_1 = 0 and the remaining terms vanish at e
        let tail = |sign| sign_items(n, sign).split_off(2);
        let with_plus = origin_atom(&tail(Sign::Plus), dist);
        let with_minus = origin_atom(&tail(Sign::Minus), dist);
        let with_both = class_atom(n, 2, dist) * class_atom(n, 3, dist);
        total += &pz * (BigRational::one() - with_plus - with_minus + with_both);
    }
    Ok(total)
}

/// `P(sum xi_j = 0 = sum j xi_j)` over indices `j = start, start+2, .. <= n`.
fn class_atom(n: usize, start: usize, dist: &CoeffDist) -> BigRational {
    let items: Vec<(i64, i64)> = (start..=n).step_by(2).map(|j| (1, j as i64)).collect();
    if dist.is_pm1() && !items.is_empty() {
        // with xi = +-1 the class is a spectral-null word in the class index
        // i = (j - start)/2, since sum j xi_j = 2 sum i xi_i + start sum xi_i
        let m = items.len();
        if m % 4 != 0 {
            return BigRational::zero();
        }
        let count = spectral_null_count(m);
        let (d, w) = dist.scaled();
        let mass = num_traits::pow(&w[0] * &w[2], m / 2);
        return BigRational::new((count * mass).into(), num_traits::pow(d, m).into());
    }
    origin_atom(&items, dist)
}

/// `P(D_1 n D_{-1})`.
fn both_signs_atom(n: usize, dist: &CoeffDist) -> BigRational {
    class_atom(n, 0, dist) * class_atom(n, 1, dist)
}

fn check_distinct(weights: &[i64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Domain("weights must be nonempty".into()));
    }
    let mut seen = BTreeSet::new();
    for &w in weights {
        if !seen.insert(w) {
            return Err(Error::DuplicateWeight(w));
        }
    }
    Ok(())
}

/// `max_m P(sum w_j xi_j = m)` for distinct weights.
pub fn max_atom_weighted(weights: &[i64], dist: &CoeffDist) -> Result<BigRational> {
    check_distinct(weights)?;
    let items: Vec<(i64, i64)> = weights.iter().map(|&w| (w, 0)).collect();
    let table = items_table(&items, dist);
    let best = table.iter().map(|(_, c)| c).max().cloned().unwrap_or_default();
    Ok(BigRational::new(best.into(), table.denom().clone().into()))
}

/// `P(sum w_j xi_j = m)` with no restriction on the weights.
pub fn weighted_sum_atom(weights: &[i64], dist: &CoeffDist, m: i64) -> BigRational {
    let items: Vec<(i64, i64)> = weights.iter().map(|&w| (w, 0)).collect();
    items_atom(&items, dist, (m, 0))
}

/// Exact `P(P'(i) = 0)` for the imaginary unit `i`.
///
/// `P'(i) = sum j xi_j i^(j-1)`: odd `j` contribute to the real part with
/// sign `(-1)^((j-1)/2)`, even `j >= 2` to the imaginary part with sign
/// `(-1)^((j-2)/2)`. The two parts involve disjoint coefficients.
pub fn derivative_root_at_i_prob(n: usize, dist: &CoeffDist) -> BigRational {
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let real: Vec<i64> = (1..=n).step_by(2).map(|j| j as i64 * sign((j - 1) / 2)).collect();
    let imag: Vec<i64> = (2..=n).step_by(2).map(|j| j as i64 * sign((j - 2) / 2)).collect();
    weighted_sum_atom(&real, dist, 0) * weighted_sum_atom(&imag, dist, 0)
}

/// Exact `P(P(a) = 0)` for an integer `a`, as the atom at zero of
/// `sum xi_j a^j`.
pub fn root_at_integer_prob(n: usize, dist: &CoeffDist, a: i64) -> Result<BigRational> {
    let mut weights = Vec::with_capacity(n + 1);
    let mut pw: i64 = 1;
    for j in 0..=n {
        weights.push(pw);
        if j < n {
            pw = pw
                .checked_mul(a)
                .filter(|v| v.unsigned_abs() <= 1 << 40)
                .ok_or_else(|| Error::Domain(format!("{a}^{} is too large for the sum table", j + 1)))?;
        }
    }
    Ok(weighted_sum_atom(&weights, dist, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn query(n: usize, dist: &CoeffDist, sign: Sign, target: (i64, i64)) -> JointAtomQuery {
        JointAtomQuery { n, dist: dist.clone(), sign, target }
    }

    #[test]
    fn joint_atom_examples() {
        let u = CoeffDist::uniform_pm1();
        assert_eq!(joint_atom(&query(3, &u, Sign::Plus, (0, 0))), rat(1, 8));
        assert_eq!(joint_atom(&query(3, &u, Sign::Minus, (0, 0))), rat(1, 8));
        let d = CoeffDist::from_fractions((1, 5), (1, 5), (3, 5)).unwrap();
        assert_eq!(joint_atom(&query(0, &d, Sign::Plus, (1, 0))), rat(3, 5));
        assert!(joint_atom(&query(3, &u, Sign::Plus, (5, 0))).is_zero());
    }

    #[test]
    fn sign_items_encode_the_derivative() {
        assert_eq!(sign_items(3, Sign::Plus), vec![(1, 0), (1, 1), (1, 2), (1, 3)]);
        // P(-1) = xi0 - xi1 + xi2 - xi3, P'(-1) = xi1 - 2 xi2 + 3 xi3
        assert_eq!(sign_items(3, Sign::Minus), vec![(1, 0), (-1, 1), (1, -2), (-1, 3)]);
    }

    #[test]
    fn union_examples() {
        let u = CoeffDist::uniform_pm1();
        assert_eq!(union_prob(3, &u).unwrap(), rat(1, 4));
        assert!(union_prob(4, &u).unwrap().is_zero());
        assert!(union_prob(0, &u).is_err());
    }

    #[test]
    fn weighted_atoms() {
        let u = CoeffDist::uniform_pm1();
        assert_eq!(max_atom_weighted(&[5], &u).unwrap(), rat(1, 2));
        assert_eq!(max_atom_weighted(&[1, 2], &u).unwrap(), rat(1, 4));
        assert_eq!(max_atom_weighted(&[1, 1], &u), Err(Error::DuplicateWeight(1)));
        assert!(max_atom_weighted(&[], &u).is_err());
        assert_eq!(weighted_sum_atom(&[1, 1], &u, 0), rat(1, 2));
    }

    #[test]
    fn root_at_two_only_for_the_zero_vector() {
        let t = CoeffDist::uniform_ternary();
        for n in 0..=6 {
            assert_eq!(root_at_integer_prob(n, &t, 2).unwrap(), rat(1, 3i64.pow(n as u32 + 1)));
        }
        assert!(root_at_integer_prob(80, &t, 2).is_err());
    }
}

//! Gaussian binomial coefficients and the counts that reduce to them.
//!
//! The number of `k`-subsets of `{0, .., m-1}` with element sum
//! `k(k-1)/2 + t` is the coefficient of `q^t` in `[m choose k]_q`. This turns
//! every `{-1, 1}` atom of `(P(e), P'(e))` into one or two coefficient lookups.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{CoeffDist, Sign};

/// A polynomial in `q` that is stepped along a row of Gaussian binomials.
/// Intermediate products can go negative, so coefficients are signed.
#[derive(Clone, Debug)]
struct Row {
    m: usize,
    k: usize,
    coeffs: Vec<BigInt>,
}

impl Row {
    fn new(m: usize) -> Self {
        Self { m, k: 0, coeffs: vec![BigInt::from(1)] }
    }

    fn times_one_minus_q_pow(&mut self, a: usize) {
        let len = self.coeffs.len();
        self.coeffs.resize(len + a, BigInt::zero());
        for i in (a..len + a).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - a];
        }
    }

    fn over_one_minus_q_pow(&mut self, a: usize) {
        let len = self.coeffs.len() - a;
        for i in a..len {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - a];
        }
        self.coeffs.truncate(len);
    }

    /// `[m choose k] -> [m choose k+1]`
    fn step_up(&mut self) {
        debug_assert!(self.k < self.m);
        self.times_one_minus_q_pow(self.m - self.k);
        self.over_one_minus_q_pow(self.k + 1);
        self.k += 1;
    }

    /// `[m choose k] -> [m choose k-1]`
    fn step_down(&mut self) {
        debug_assert!(self.k > 0);
        self.times_one_minus_q_pow(self.k);
        self.over_one_minus_q_pow(self.m - self.k + 1);
        self.k -= 1;
    }

    fn goto(&mut self, k: usize) {
        while self.k < k {
            self.step_up();
        }
        while self.k > k {
            self.step_down();
        }
    }

    /// Number of `k`-subsets of `{0, .., m-1}` with sum `s`.
    fn subsets_with_sum(&self, s: i64) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        let base = (self.k * self.k.saturating_sub(1) / 2) as i64;
        let t = s - base;
        if t < 0 || t as usize >= self.coeffs.len() {
            return ZERO.get_or_init(BigInt::zero);
        }
        &self.coeffs[t as usize]
    }
}

/// Coefficients of `[m choose k]_q`, lowest power first.
pub fn gaussian_binomial(m: usize, k: usize) -> Vec<BigUint> {
    if k > m {
        return Vec::new();
    }
    let mut row = Row::new(m);
    row.goto(k.min(m - k));
    row.coeffs
        .into_iter()
        .map(|c| c.to_biguint().expect("Gaussian binomial coefficients are nonnegative"))
        .collect()
}

/// Number of `k`-subsets of `{0, .., m-1}` whose elements sum to `s`.
pub fn subset_sum_count(m: usize, k: usize, s: i64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let mut row = Row::new(m);
    row.goto(k);
    row.subsets_with_sum(s).to_biguint().expect("nonnegative")
}

/// Sign vectors `b` in `{-1, 1}^m` with `sum b_i = 0` and `sum i b_i = 0`
/// (second-order spectral-null words).
///
/// With `S = {i : b_i = 1}` this counts subsets of `{1, .., m}` of size
/// `m/2` and sum `m(m+1)/4`, which vanishes unless `4 | m`.
pub fn spectral_null_count(m: usize) -> BigUint {
    if m % 4 != 0 {
        return BigUint::zero();
    }
    // shift {1..m} to {0..m-1}: target sum m(m+1)/4 - m/2
    let s = (m * (m + 1) / 4 - m / 2) as i64;
    subset_sum_count(m, m / 2, s)
}

/// Exact `P(P(e) = a, P'(e) = b)` for a law on `{-1, 1}` (no mass at zero).
///
/// With `eta_j = e^j xi_j` and `U = {j : eta_j = 1}`, `P(e) = 2|U| - (n+1)` and
/// `P'(e) = e (2 sum_U j - n(n+1)/2)`, so the atom is a subset count. For
/// `e = -1` the mass of `eta_j = 1` depends on the parity of `j`, and the
/// count splits over even and odd indices.
pub(crate) fn pm1_joint_atom(n: usize, dist: &CoeffDist, sign: Sign, (a, b): (i64, i64)) -> BigRational {
    debug_assert!(dist.is_pm1());
    let len = n as i64 + 1;
    let tri = len * (len - 1) / 2;
    let eb = sign.value() * b;
    if (a + len) % 2 != 0 || (eb + tri) % 2 != 0 {
        return BigRational::zero();
    }
    let u = (a + len) / 2;
    let s = (eb + tri) / 2;
    if u < 0 || u > len || s < 0 || s > tri {
        return BigRational::zero();
    }
    let (d, w) = dist.scaled();
    let (wm, wp) = (BigInt::from(w[0].clone()), BigInt::from(w[2].clone()));
    let denom = BigInt::from(num_traits::pow(d, n + 1));
    let u = u as usize;

    let count = match sign {
        Sign::Plus => {
            let mut row = Row::new(n + 1);
            row.goto(u);
            row.subsets_with_sum(s) * num_traits::pow(wp, u) * num_traits::pow(wm, n + 1 - u)
        }
        Sign::Minus => {
            // even indices 2i (i < ne) and odd indices 2i+1 (i < no); choosing
            // an even index means xi = +1, choosing an odd one means xi = -1
            let ne = n / 2 + 1;
            let no = n + 1 - ne;
            let lo = u.saturating_sub(no);
            let hi = u.min(ne);
            let mut even = Row::new(ne);
            let mut odd = Row::new(no);
            let mut total = BigInt::zero();
            for ue in lo..=hi {
                let uo = u - ue;
                even.goto(ue);
                odd.goto(uo);
                // sum of chosen indices = 2 (Se + So) + uo
                let rest = s - uo as i64;
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                let t = rest / 2;
                let ebase = (ue * ue.saturating_sub(1) / 2) as i64;
                let obase = (uo * uo.saturating_sub(1) / 2) as i64;
                let mut c = BigInt::zero();
                for (i, ce) in even.coeffs.iter().enumerate() {
                    if ce.is_zero() {
                        continue;
                    }
                    let so = t - (ebase + i as i64);
                    let co = odd.subsets_with_sum(so);
                    if !co.is_zero() {
                        c += ce * co;
                    }
                    if so < obase {
                        break;
                    }
                }
                if !c.is_zero() {
                    let wt = num_traits::pow(wp.clone(), ue + no - uo)
                        * num_traits::pow(wm.clone(), ne - ue + uo);
                    total += c * wt;
                }
            }
            total
        }
    };
    debug_assert!(!count.is_negative());
    BigRational::new(count, denom)
}

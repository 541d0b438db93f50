//! Exhaustive sweeps over every coefficient vector of a given degree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyint::IntPoly;
use crate::rootsense::{classify, default_k_max, has_repeated_root_i64};

/// Coefficient alphabet of an exhaustive sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{-1, 1}`
    Pm1,
    /// `{-1, 0, 1}`
    Ternary,
}

impl Alphabet {
    pub fn size(self) -> u64 {
        match self {
            Alphabet::Pm1 => 2,
            Alphabet::Ternary => 3,
        }
    }

    fn letter(self, digit: u64) -> i64 {
        match self {
            Alphabet::Pm1 => 2 * digit as i64 - 1,
            Alphabet::Ternary => digit as i64 - 1,
        }
    }

    /// Default sweep budget, in coefficient vectors: degree 25 for `{-1, 1}`
    /// and degree 15 for `{-1, 0, 1}`.
    pub fn default_budget(self) -> BigUint {
        match self {
            Alphabet::Pm1 => BigUint::one() << 26,
            Alphabet::Ternary => num_traits::pow(BigUint::from(3u32), 16),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Pm1 => "pm1",
            Alphabet::Ternary => "ternary",
        })
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm1" => Ok(Alphabet::Pm1),
            "ternary" => Ok(Alphabet::Ternary),
            _ => Err(Error::Domain(format!("unknown alphabet {s:?}; expected pm1 or ternary"))),
        }
    }
}

/// Repeated-root counts over all `alphabet^(n+1)` coefficient vectors.
///
/// The all-zero vector (only possible for the ternary alphabet) is counted in
/// `total` and `all_zero` and in no other field. Class counters overlap: a
/// polynomial with double roots at `+1` and `-1` increments both, and
/// `repeated` once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub alphabet: Alphabet,
    pub total: BigUint,
    pub repeated: BigUint,
    pub at_minus1: BigUint,
    pub at_zero: BigUint,
    pub at_plus1: BigUint,
    pub noncyclotomic: BigUint,
    pub cyclotomic_other: BigUint,
    pub all_zero: BigUint,
    /// Nonzero polynomials with a double root at `-1`, `0` or `+1`.
    pub special_union: BigUint,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    repeated: u64,
    at_minus1: u64,
    at_zero: u64,
    at_plus1: u64,
    noncyclotomic: u64,
    cyclotomic_other: u64,
    all_zero: u64,
    special_union: u64,
    examples: Vec<Vec<i64>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.repeated += other.repeated;
        self.at_minus1 += other.at_minus1;
        self.at_zero += other.at_zero;
        self.at_plus1 += other.at_plus1;
        self.noncyclotomic += other.noncyclotomic;
        self.cyclotomic_other += other.cyclotomic_other;
        self.all_zero += other.all_zero;
        self.special_union += other.special_union;
        self.examples.extend(other.examples);
        self
    }

    fn record(&mut self, coeffs: &[i64], k_max: u64) -> Result<()> {
        if coeffs.iter().all(|&c| c == 0) {
            self.all_zero += 1;
            return Ok(());
        }
        if !has_repeated_root_i64(coeffs)? {
            return Ok(());
        }
        self.repeated += 1;
        let r = classify(&IntPoly::from_i64(coeffs), k_max)?;
        self.at_minus1 += (r.mult_at_minus1 >= 2) as u64;
        self.at_zero += (r.mult_at_zero >= 2) as u64;
        self.at_plus1 += (r.mult_at_plus1 >= 2) as u64;
        self.special_union += r.double_at_special() as u64;
        self.cyclotomic_other += (!r.cyclotomic_square_indices.is_empty()) as u64;
        if r.has_noncyclotomic_repeat {
            self.noncyclotomic += 1;
            self.examples.push(coeffs.to_vec());
        }
        Ok(())
    }
}

fn check_budget(n: usize, alphabet: Alphabet, budget: &BigUint) -> Result<u64> {
    let total = num_traits::pow(BigUint::from(alphabet.size()), n + 1);
    if &total > budget {
        return Err(Error::BudgetExceeded {
            required: total.to_string(),
            budget: budget.to_string(),
        });
    }
    total
        .to_u64()
        .ok_or_else(|| Error::Domain("sweep size does not fit in 64 bits".into()))
}

/// Visits every vector, split into contiguous blocks by the leading digits.
/// Blocks are reduced in index order, so the result (including the order of
/// collected examples) does not depend on the thread pool.
fn sweep(n: usize, alphabet: Alphabet, budget: &BigUint) -> Result<(u64, Tally)> {
    let total = check_budget(n, alphabet, budget)?;
    let base = alphabet.size();
    let len = n + 1;
    let low_digits = len.min(12);
    let block = base.pow(low_digits as u32);
    let blocks = total / block;
    let k_max = default_k_max(n);

    let tallies: Vec<Result<Tally>> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let mut digits = vec![0u64; len];
            let mut hi = blk;
            for d in digits[low_digits..].iter_mut() {
                *d = hi % base;
                hi /= base;
            }
            let mut coeffs: Vec<i64> = digits.iter().map(|&d| alphabet.letter(d)).collect();
            let mut tally = Tally::default();
            for _ in 0..block {
                tally.record(&coeffs, k_max)?;
                // odometer over the low digits
                for i in 0..low_digits {
                    digits[i] += 1;
                    if digits[i] < base {
                        coeffs[i] = alphabet.letter(digits[i]);
                        break;
                    }
                    digits[i] = 0;
                    coeffs[i] = alphabet.letter(0);
                }
            }
            Ok(tally)
        })
        .collect();

    let mut acc = Tally::default();
    for t in tallies {
        acc = acc.merge(t?);
    }
    Ok((total, acc))
}

/// Census over every coefficient vector with the default budget.
pub fn exhaustive_census(n: usize, alphabet: Alphabet) -> Result<CensusResult> {
    exhaustive_census_with_budget(n, alphabet, &alphabet.default_budget())
}

/// Census with an explicit budget on the number of vectors.
pub fn exhaustive_census_with_budget(n: usize, alphabet: Alphabet, budget: &BigUint) -> Result<CensusResult> {
    let (total, t) = sweep(n, alphabet, budget)?;
    let big = BigUint::from;
    Ok(CensusResult {
        n,
        alphabet,
        total: big(total),
        repeated: big(t.repeated),
        at_minus1: big(t.at_minus1),
        at_zero: big(t.at_zero),
        at_plus1: big(t.at_plus1),
        noncyclotomic: big(t.noncyclotomic),
        cyclotomic_other: big(t.cyclotomic_other),
        all_zero: big(t.all_zero),
        special_union: big(t.special_union),
    })
}

/// Outcome of a search for repeated roots that are not roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntReport {
    pub n: usize,
    pub scanned: u64,
    /// Coefficient vectors whose repeated part has a non-cyclotomic factor.
    pub hits: Vec<Vec<i64>>,
}

/// Exhaustive hunt over all vectors of degree `n`.
pub fn hunt_exhaustive(n: usize, alphabet: Alphabet, budget: &BigUint) -> Result<HuntReport> {
    let (total, t) = sweep(n, alphabet, budget)?;
    Ok(HuntReport { n, scanned: total, hits: t.examples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_degree_three() {
        let c = exhaustive_census(3, Alphabet::Pm1).unwrap();
        assert_eq!(c.total, BigUint::from(16u32));
        assert_eq!(c.repeated, BigUint::from(4u32));
        assert_eq!(c.at_minus1, BigUint::from(2u32));
        assert_eq!(c.at_plus1, BigUint::from(2u32));
        assert_eq!(c.at_zero, BigUint::from(0u32));
        assert_eq!(c.noncyclotomic + c.cyclotomic_other, BigUint::from(0u32));
    }

    #[test]
    fn census_small_degrees() {
        assert_eq!(exhaustive_census(2, Alphabet::Pm1).unwrap().repeated, BigUint::from(0u32));
        let c = exhaustive_census(1, Alphabet::Ternary).unwrap();
        assert_eq!(c.total, BigUint::from(9u32));
        assert_eq!(c.all_zero, BigUint::from(1u32));
        assert_eq!(c.repeated, BigUint::from(0u32));
        assert_eq!(c.at_zero, BigUint::from(0u32));
        // z^2 is the one ternary quadratic with a double root at 0, up to sign
        let c = exhaustive_census(2, Alphabet::Ternary).unwrap();
        assert_eq!(c.at_zero, BigUint::from(2u32));
    }

    #[test]
    fn budget_is_enforced() {
        let err = exhaustive_census(16, Alphabet::Ternary).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.to_string().contains("mc"));
    }

    #[test]
    fn brute_force_agrees_on_small_ternary() {
        // every nonzero ternary polynomial of degree <= 4, classified directly
        let n = 4;
        let mut repeated = 0u32;
        for code in 0..3u32.pow(n + 1) {
            let coeffs: Vec<i64> = (0..=n).map(|j| (code / 3u32.pow(j) % 3) as i64 - 1).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let p = IntPoly::from_i64(&coeffs);
            if crate::rootsense::has_repeated_root(&p).unwrap() {
                repeated += 1;
            }
        }
        let c = exhaustive_census(n as usize, Alphabet::Ternary).unwrap();
        assert_eq!(c.repeated, BigUint::from(repeated));
    }
}

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Law of a single coefficient on `{-1, 0, 1}` with exact rational masses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffDist {
    p_minus: BigRational,
    p_zero: BigRational,
    p_plus: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl CoeffDist {
    pub fn new(p_minus: BigRational, p_zero: BigRational, p_plus: BigRational) -> Result<Self> {
        for (name, v) in [("p_minus", &p_minus), ("p_zero", &p_zero), ("p_plus", &p_plus)] {
            if v.is_negative() || v > &BigRational::one() {
                return Err(Error::InvalidDist(format!("{name} = {v} is not in [0, 1]")));
            }
        }
        let total = &p_minus + &p_zero + &p_plus;
        if !total.is_one() {
            return Err(Error::InvalidDist(format!("masses sum to {total}, not 1")));
        }
        Ok(Self { p_minus, p_zero, p_plus })
    }

    /// Masses given as small fractions `(numerator, denominator)`.
    pub fn from_fractions(minus: (i64, i64), zero: (i64, i64), plus: (i64, i64)) -> Result<Self> {
        for (_, d) in [minus, zero, plus] {
            if d == 0 {
                return Err(Error::InvalidDist("zero denominator".into()));
            }
        }
        Self::new(ratio(minus.0, minus.1), ratio(zero.0, zero.1), ratio(plus.0, plus.1))
    }

    /// Uniform on `{-1, 1}`.
    pub fn uniform_pm1() -> Self {
        Self::pm1(ratio(1, 2)).expect("valid")
    }

    /// Uniform on `{-1, 0, 1}`.
    pub fn uniform_ternary() -> Self {
        Self::from_fractions((1, 3), (1, 3), (1, 3)).expect("valid")
    }

    /// Supported on `{-1, 1}` with `P(xi = 1) = p`.
    pub fn pm1(p: BigRational) -> Result<Self> {
        let q = BigRational::one() - &p;
        Self::new(q, BigRational::zero(), p)
    }

    pub fn p_minus(&self) -> &BigRational {
        &self.p_minus
    }

    pub fn p_zero(&self) -> &BigRational {
        &self.p_zero
    }

    pub fn p_plus(&self) -> &BigRational {
        &self.p_plus
    }

    /// Masses as floats, `(p_minus, p_zero, p_plus)`.
    pub fn to_f64(&self) -> (f64, f64, f64) {
        let f = |r: &BigRational| r.to_f64().expect("probability is finite");
        (f(&self.p_minus), f(&self.p_zero), f(&self.p_plus))
    }

    pub fn mean(&self) -> BigRational {
        &self.p_plus - &self.p_minus
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        &self.p_plus + &self.p_minus - &m * &m
    }

    pub fn max_atom(&self) -> BigRational {
        let a = self.p_minus.clone().max(self.p_zero.clone());
        a.max(self.p_plus.clone())
    }

    /// Largest atom strictly below `1/sqrt(3)`, decided exactly as `3 m^2 < 1`.
    pub fn satisfies_sqrt3_condition(&self) -> bool {
        let m = self.max_atom();
        BigRational::from_integer(3.into()) * &m * &m < BigRational::one()
    }

    /// No mass at zero.
    pub fn is_pm1(&self) -> bool {
        self.p_zero.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.p_minus == self.p_plus
    }

    /// Least common denominator `D` and the masses scaled by it,
    /// `(D p_minus, D p_zero, D p_plus)`.
    pub(crate) fn scaled(&self) -> (BigUint, [BigUint; 3]) {
        let d = self
            .p_minus
            .denom()
            .lcm(self.p_zero.denom())
            .lcm(self.p_plus.denom());
        let scale = |r: &BigRational| -> BigUint {
            (r.numer() * (&d / r.denom()))
                .to_biguint()
                .expect("masses are nonnegative")
        };
        let w = [scale(&self.p_minus), scale(&self.p_zero), scale(&self.p_plus)];
        (d.to_biguint().expect("positive"), w)
    }

    /// The same law with `-1` and `+1` exchanged.
    pub fn flipped(&self) -> Self {
        Self {
            p_minus: self.p_plus.clone(),
            p_zero: self.p_zero.clone(),
            p_plus: self.p_minus.clone(),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidDist(format!("cannot parse {s:?} as a rational"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses `"a/b,c/d,e/f"` as `p_minus, p_zero, p_plus`.
impl FromStr for CoeffDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidDist(format!(
                "expected three comma-separated masses p_minus,p_zero,p_plus, got {s:?}"
            )));
        }
        Self::new(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?)
    }
}

impl fmt::Display for CoeffDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p_minus, self.p_zero, self.p_plus)
    }
}

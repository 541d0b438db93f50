//! Dense univariate polynomials over the integers.
//!
//! [`IntPoly`] stores coefficients lowest degree first with arbitrary
//! precision. The representation is canonical: no trailing zero
//! coefficients are stored, and the zero polynomial is the empty vector.

mod cyclo;
mod gcd;
pub(crate) mod modp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use cyclo::{cyclotomic, divisors, totient, CyclotomicCache};
pub use gcd::gcd_rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `z - a`.
    pub fn linear_root(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Coefficients as `i64`, or `None` if any does not fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Index of the highest nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
    /// Zero for the zero polynomial.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Horner evaluation at an integer.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-one associate with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// `z^deg * p(1/z)`, after removing any factor `z^k`.
    pub fn reciprocal(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divide by `z^k`; the caller guarantees `k <= low_order()`.
    pub(crate) fn unshift(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_order() || self.is_zero());
        Self {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Quotient in `Z[z]` when `divisor` divides `self` there, else `None`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<Option<IntPoly>> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok(Some(Self::zero()));
        };
        if nd < dd {
            return Ok(None);
        }
        let lead = divisor.leading().expect("nonzero");
        let unit_lead = lead.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = if unit_lead {
                top.clone()
            } else {
                let (q, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Ok(None);
                }
                q
            };
            for (i, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + i] -= &q * d;
                }
            }
            quot[k] = q;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(Self::from_coeffs(quot)))
    }

    /// Pseudo-remainder `r` with `lc(d)^(deg a - deg d + 1) * a = q * d + r`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Ok(self.clone());
        }
        let lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut owed = nd - dd + 1;
        while rem.len() > dd {
            let top = rem.pop().expect("nonempty");
            let k = rem.len() - dd;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + i] -= &top * d;
            }
            owed -= 1;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        if owed > 0 {
            let f = num_traits::pow(lead.clone(), owed);
            for c in rem.iter_mut() {
                *c *= &f;
            }
        }
        Ok(Self::from_coeffs(rem))
    }

    /// Divide out `(z - a)` as often as possible; returns the multiplicity and cofactor.
    pub(crate) fn strip_root(&self, a: i64) -> (usize, IntPoly) {
        if a == 0 {
            let m = self.low_order();
            return (m, self.unshift(m));
        }
        let mut m = 0;
        let mut cur = self.clone();
        let a = BigInt::from(a);
        while let Some(q) = synthetic_division(&cur, &a) {
            m += 1;
            cur = q;
        }
        (m, cur)
    }
}

/// `p / (z - a)` when `p(a) = 0` and `p` is nonconstant.
fn synthetic_division(p: &IntPoly, a: &BigInt) -> Option<IntPoly> {
    if p.is_constant() {
        return None;
    }
    let mut out = vec![BigInt::zero(); p.coeffs.len() - 1];
    let mut carry = BigInt::zero();
    for j in (1..p.coeffs.len()).rev() {
        carry = &carry * a + &p.coeffs[j];
        out[j - 1] = carry.clone();
    }
    let rem = carry * a + &p.coeffs[0];
    rem.is_zero().then(|| IntPoly::from_coeffs(out))
}

/// Horner evaluation, `sum coeffs[j] x^j`.
pub fn evaluate(p: &IntPoly, x: &BigInt) -> BigInt {
    p.evaluate(x)
}

pub fn derivative(p: &IntPoly) -> IntPoly {
    p.derivative()
}

/// Whether `b` is a multiple of `a` in `Q[z]`.
pub fn divides(a: &IntPoly, b: &IntPoly) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // Gauss: for primitive a, divisibility over Q and over Z coincide.
    Ok(b.div_exact(&a.primitive_part())?.is_some())
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for IntPoly {
    /// Human-readable form, highest degree first: `z^3 - z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = j == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => write!(f, "{}z", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}z^{j}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

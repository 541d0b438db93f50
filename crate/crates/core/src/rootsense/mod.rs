//! Repeated-root detection and classification for integer polynomials.
//!
//! A polynomial has a repeated root iff `gcd(P, P')` is nonconstant. The
//! classifier splits that gcd into the part supported at `-1, 0, +1`, the
//! cyclotomic part `Phi_k` with `k >= 3`, and whatever is left over.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polyint::{gcd_rational, modp, totient, CyclotomicCache, IntPoly};

/// Where the repeated roots of a polynomial live.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootReport {
    pub mult_at_minus1: usize,
    pub mult_at_zero: usize,
    pub mult_at_plus1: usize,
    /// Indices `k >= 3` with `Phi_k^2` dividing the polynomial.
    pub cyclotomic_square_indices: BTreeSet<u64>,
    /// `gcd(P, P')` keeps a nonconstant factor after every `z`, `z - 1`,
    /// `z + 1` and detected `Phi_k` power is divided out.
    pub has_noncyclotomic_repeat: bool,
    /// Degree of `gcd(P, P')`.
    pub repeated_part_degree: usize,
}

impl RootReport {
    pub fn has_repeated_root(&self) -> bool {
        self.repeated_part_degree > 0
    }

    /// Double root at `-1`, `0` or `+1`.
    pub fn double_at_special(&self) -> bool {
        self.mult_at_minus1 >= 2 || self.mult_at_zero >= 2 || self.mult_at_plus1 >= 2
    }
}

pub fn has_repeated_root(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(small) = p.to_i64_vec() {
        return has_repeated_root_i64(&small);
    }
    Ok(!gcd_rational(p, &p.derivative())?.is_constant())
}

/// [`has_repeated_root`] for a coefficient vector of machine integers
/// (lowest degree first, trailing zeros allowed). Avoids big integers unless
/// the modular screen is inconclusive.
pub fn has_repeated_root_i64(coeffs: &[i64]) -> Result<bool> {
    let len = coeffs.iter().rposition(|&c| c != 0).ok_or(Error::ZeroPolynomial)? + 1;
    let coeffs = &coeffs[..len];
    if len <= 2 {
        return Ok(false);
    }
    if coeffs[0] == 0 && coeffs[1] == 0 {
        return Ok(true);
    }
    if modp::screen_square_free(coeffs) == Some(false) {
        return Ok(false);
    }
    // most repeated roots of small-coefficient polynomials sit at +-1, and
    // those are certified by two integer sums each
    if double_at_unit(coeffs, 1) || double_at_unit(coeffs, -1) {
        return Ok(true);
    }
    let p = IntPoly::from_i64(coeffs);
    Ok(!gcd_rational(&p, &p.derivative())?.is_constant())
}

/// `P(e) = P'(e) = 0` for `e = +-1`, in `i128` to stay exact for any `i64` input.
pub(crate) fn double_at_unit(c: &[i64], e: i64) -> bool {
    let (mut v, mut d) = (0i128, 0i128);
    let mut sign = 1i128;
    for (j, &x) in c.iter().enumerate() {
        v += sign * x as i128;
        // j e^(j-1) = j e^j e
        d += sign * (j as i128) * (x as i128) * e as i128;
        sign *= e as i128;
    }
    v == 0 && d == 0
}

/// Largest `m` with `(z - a)^m` dividing `p`, for `a` in `{-1, 0, 1}`.
pub fn multiplicity_at(p: &IntPoly, a: i64) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(-1..=1).contains(&a) {
        return Err(Error::Domain(format!("multiplicity is supported at -1, 0, 1, not {a}")));
    }
    Ok(p.strip_root(a).0)
}

/// Default search limit for cyclotomic indices.
///
/// `Phi_k^2 | p` forces `2 phi(k) <= deg p`, and `phi(k) >= sqrt(k / 2)`, so
/// every such `k` satisfies `k <= deg(p)^2 / 2`.
pub fn default_k_max(degree: usize) -> u64 {
    let d = degree as u64;
    (d * d / 2).max(2)
}

/// Classify the repeated roots of `p`, testing `Phi_k` for `3 <= k <= k_max`.
pub fn classify(p: &IntPoly, k_max: u64) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if k_max < 2 {
        return Err(Error::Domain(format!("k_max must be >= 2, got {k_max}")));
    }
    let mut report = RootReport {
        mult_at_zero: p.low_order(),
        ..RootReport::default()
    };
    let core = p.strip_root(0).1;
    report.mult_at_minus1 = core.strip_root(-1).0;
    report.mult_at_plus1 = core.strip_root(1).0;

    let g = if let Some(small) = p.to_i64_vec() {
        if !has_repeated_root_i64(&small)? {
            return Ok(report);
        }
        gcd_rational(p, &p.derivative())?
    } else {
        gcd_rational(p, &p.derivative())?
    };
    report.repeated_part_degree = g.degree().expect("gcd is nonzero");
    if report.repeated_part_degree == 0 {
        return Ok(report);
    }

    let mut rest = g.strip_root(0).1.strip_root(1).1.strip_root(-1).1;
    let mut rest_deg = rest.degree().expect("nonzero");
    if rest_deg > 0 {
        // Phi_k | rest needs phi(k) <= deg(rest), hence k <= 2 deg(rest)^2
        let bound = k_max.min(2 * (rest_deg as u64).pow(2));
        let mut cache = CyclotomicCache::default();
        for k in 3..=bound {
            if rest_deg == 0 {
                break;
            }
            if totient(k)? as usize > rest_deg {
                continue;
            }
            let phi = cache.get(k)?;
            let mut found = false;
            while let Some(q) = rest.div_exact(&phi)? {
                found = true;
                rest = q;
            }
            if found {
                report.cyclotomic_square_indices.insert(k);
                rest_deg = rest.degree().expect("nonzero");
            }
        }
    }
    report.has_noncyclotomic_repeat = rest_deg > 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn repeated_root_examples() {
        assert!(has_repeated_root(&p(&[1, 1, -1, -1])).unwrap());
        assert!(!has_repeated_root(&p(&[1, 1, 1, 1])).unwrap());
        assert!(has_repeated_root(&p(&[0, 0, 1])).unwrap());
        assert_eq!(has_repeated_root(&IntPoly::zero()), Err(Error::ZeroPolynomial));
        assert!(!has_repeated_root(&p(&[5])).unwrap());
    }

    #[test]
    fn small_path_ignores_trailing_zeros() {
        assert!(has_repeated_root_i64(&[1, 1, -1, -1, 0, 0]).unwrap());
        assert_eq!(has_repeated_root_i64(&[0, 0]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_at(&p(&[1, 1, -1, -1]), -1).unwrap(), 2);
        assert_eq!(multiplicity_at(&p(&[1, 1, 1, 1]), 0).unwrap(), 0);
        assert_eq!(multiplicity_at(&p(&[0, 0, 1, 1]), 0).unwrap(), 2);
        assert!(multiplicity_at(&p(&[1, 1]), 2).is_err());
    }

    #[test]
    fn classify_examples() {
        let r = classify(&p(&[1, 2, 3, 2, 1]), 8).unwrap();
        assert_eq!(r.cyclotomic_square_indices, BTreeSet::from([3]));
        assert_eq!((r.mult_at_minus1, r.mult_at_zero, r.mult_at_plus1), (0, 0, 0));
        assert!(!r.has_noncyclotomic_repeat);
        assert_eq!(r.repeated_part_degree, 2);

        let r = classify(&p(&[1, 1, -1, -1]), 6).unwrap();
        assert_eq!(r.mult_at_minus1, 2);
        assert_eq!(r.mult_at_plus1, 1);
        assert!(r.cyclotomic_square_indices.is_empty() && !r.has_noncyclotomic_repeat);

        let r = classify(&p(&[1, -1, -1, 1]), 6).unwrap();
        assert_eq!(r.mult_at_plus1, 2);
    }

    #[test]
    fn classify_flags_noncyclotomic_square() {
        // (z^2 - z - 1)^2 (z + 1)
        let g = p(&[-1, -1, 1]);
        let f = &(&g * &g) * &p(&[1, 1]);
        let r = classify(&f, default_k_max(5)).unwrap();
        assert!(r.has_noncyclotomic_repeat);
        assert!(r.cyclotomic_square_indices.is_empty());
        assert_eq!(r.repeated_part_degree, 2);
    }

    #[test]
    fn classify_finds_large_index_beyond_twice_degree() {
        // Phi_210 has degree 48, so Phi_210^2 has degree 96 < 210
        let phi = crate::polyint::cyclotomic(210).unwrap();
        let f = &phi * &phi;
        let r = classify(&f, default_k_max(96)).unwrap();
        assert_eq!(r.cyclotomic_square_indices, BTreeSet::from([210]));
        assert!(!r.has_noncyclotomic_repeat);
        // the short limit misses it and reports a leftover instead
        let short = classify(&f, 2 * 96).unwrap();
        assert!(short.has_noncyclotomic_repeat);
    }
}

//! Polynomial arithmetic over `Z/pZ` for a handful of fixed 31-bit primes.
//!
//! The primes are compile-time constants so that `%` lowers to multiply and
//! shift; products of two residues fit in a `u64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::sync::OnceLock;

/// Primes just below `2^31`. A gcd computed modulo any one of them that does
/// not divide either leading coefficient has degree at least that of the
/// rational gcd.
pub(crate) const P0: u64 = 2_147_483_647;
pub(crate) const P1: u64 = 2_147_483_629;
pub(crate) const P2: u64 = 2_147_483_587;

#[inline]
fn reduce_i64<const P: u64>(c: i64) -> u64 {
    c.rem_euclid(P as i64) as u64
}

pub(crate) fn reduce_big<const P: u64>(c: &BigInt) -> u64 {
    match c.to_i64() {
        Some(v) => reduce_i64::<P>(v),
        None => c
            .mod_floor(&BigInt::from(P))
            .to_u64()
            .expect("residue fits"),
    }
}

#[inline]
fn mul<const P: u64>(a: u64, b: u64) -> u64 {
    (a * b) % P
}

fn pow<const P: u64>(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul::<P>(acc, b);
        }
        b = mul::<P>(b, b);
        e >>= 1;
    }
    acc
}

#[inline]
fn inv<const P: u64>(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow::<P>(a, P - 2)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// A 16-bit prime whose inverses are tabulated, for a cheap first screen.
pub(crate) const PS: u64 = 65_521;

fn small_inverses() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let p = PS as usize;
        let mut t = vec![0u32; p];
        t[1] = 1;
        // i * inv(i) = 1 with p = (p / i) i + p % i
        for i in 2..p {
            t[i] = ((p - p / i) as u64 * t[p % i] as u64 % PS) as u32;
        }
        t
    })
}

/// Degree of `gcd(a, b)` over `F_P`; `None` if both reduce to zero.
/// Inputs are residue vectors, lowest degree first, and are consumed.
pub(crate) fn gcd_degree<const P: u64>(a: Vec<u64>, b: Vec<u64>) -> Option<usize> {
    if P == PS {
        return gcd_degree_small(a, b);
    }
    gcd_degree_wide::<P>(a, b)
}

// Products modulo PS fit in 32 bits, so each division step accumulates
// unreduced in u64 and reduces once per popped coefficient.
fn gcd_degree_small(mut a: Vec<u64>, mut b: Vec<u64>) -> Option<usize> {
    let t = small_inverses();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return Some(0);
        }
        let db = b.len() - 1;
        let lead_inv = t[b[db] as usize] as u64;
        let neg: Vec<u64> = b[..db].iter().map(|&x| (PS - x) % PS).collect();
        while a.len() > db {
            let top = a.pop().expect("nonempty") % PS;
            if top != 0 {
                let f = top * lead_inv % PS;
                let k = a.len() - db;
                for (slot, &nb) in a[k..].iter_mut().zip(&neg) {
                    *slot += f * nb;
                }
            }
        }
        for x in a.iter_mut() {
            *x %= PS;
        }
        trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

fn gcd_degree_wide<const P: u64>(mut a: Vec<u64>, mut b: Vec<u64>) -> Option<usize> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return Some(0);
        }
        // a <- a mod b
        let db = b.len() - 1;
        let lead_inv = inv::<P>(b[db]);
        while a.len() > db {
            let top = a.pop().expect("nonempty");
            if top != 0 {
                let f = mul::<P>(top, lead_inv);
                let k = a.len() - db;
                for (i, &bi) in b[..db].iter().enumerate() {
                    if bi != 0 {
                        let t = mul::<P>(f, bi);
                        let slot = &mut a[k + i];
                        *slot = if *slot >= t { *slot - t } else { *slot + P - t };
                    }
                }
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

/// Screening test for a repeated factor of a small-coefficient polynomial.
///
/// Returns `Some(false)` when `gcd(p, p')` is certified constant modulo one of
/// the primes, and `None` when every usable prime saw a nonconstant gcd (the
/// caller must then decide exactly). `coeffs` must be trimmed (nonzero last
/// entry) and have degree at least 1.
pub(crate) fn screen_square_free(coeffs: &[i64]) -> Option<bool> {
    fn attempt<const P: u64>(coeffs: &[i64]) -> Option<bool> {
        let n = coeffs.len() - 1;
        let lead = coeffs[n];
        // p' has leading coefficient n * lead
        if reduce_i64::<P>(lead) == 0 || reduce_i64::<P>(lead.checked_mul(n as i64)?) == 0 {
            return None;
        }
        let a: Vec<u64> = coeffs.iter().map(|&c| reduce_i64::<P>(c)).collect();
        let b: Vec<u64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| reduce_i64::<P>(c.checked_mul(j as i64).expect("small coefficients")))
            .collect();
        match gcd_degree::<P>(a, b) {
            Some(0) => Some(false),
            _ => None,
        }
    }
    debug_assert!(coeffs.len() >= 2 && *coeffs.last().unwrap() != 0);
    attempt::<PS>(coeffs)
        .or_else(|| attempt::<P0>(coeffs))
        .or_else(|| attempt::<P1>(coeffs))
        .or_else(|| attempt::<P2>(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_gcd_degree_of_known_pairs() {
        // gcd(z^2 - 1, z^3 - 1) = z - 1
        let a = vec![P0 - 1, 0, 1];
        let b = vec![P0 - 1, 0, 0, 1];
        assert_eq!(gcd_degree::<P0>(a, b), Some(1));
        assert_eq!(gcd_degree::<P0>(vec![0], vec![0, 0]), None);
        assert_eq!(gcd_degree::<P1>(vec![1, 1], vec![]), Some(1));
    }

    #[test]
    fn screen_detects_square_free() {
        // 1 + z + z^2 + z^3 = (1 + z)(1 + z^2) is square-free
        assert_eq!(screen_square_free(&[1, 1, 1, 1]), Some(false));
        // 1 + z - z^2 - z^3 = -(z - 1)(z + 1)^2
        assert_eq!(screen_square_free(&[1, 1, -1, -1]), None);
    }

    #[test]
    fn inverse_table() {
        let t = small_inverses();
        for x in [1u64, 2, 3, 1000, PS - 1] {
            assert_eq!(x * t[x as usize] as u64 % PS, 1);
        }
        assert_eq!(gcd_degree::<PS>(vec![PS - 1, 0, 1], vec![PS - 1, 0, 0, 1]), Some(1));
    }

    #[test]
    fn big_residues_agree_with_small() {
        for c in [-5i64, 0, 7, i64::MAX, i64::MIN + 1] {
            assert_eq!(reduce_big::<P2>(&BigInt::from(c)), reduce_i64::<P2>(c));
        }
        let huge = BigInt::from(P1) * BigInt::from(u64::MAX) + 3;
        assert_eq!(reduce_big::<P1>(&huge), 3);
    }
}

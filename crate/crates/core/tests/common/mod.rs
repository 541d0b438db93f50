//! Independent oracles shared by the integration and acceptance tests. None of
//! this goes through the library's gcd or root-finding code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// 31-bit primes, disjoint from the ones the library screens with.
pub const PRIMES: [u64; 8] = [
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
    2_147_483_543,
    2_147_483_497,
    2_147_483_489,
    2_147_483_477,
    2_147_483_423,
];

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Determinant mod `p` by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let inv = pow_mod(m[col][col], p - 2, p);
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let f = m[r][col] * inv % p;
            for c in col..n {
                m[r][c] = (m[r][c] + p - f * m[col][c] % p) % p;
            }
        }
    }
    det
}

/// Sylvester matrix of two polynomials given low-first, both with nonzero
/// leading coefficient.
pub fn sylvester(a: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut m = vec![vec![0i64; size]; size];
    for r in 0..db {
        for (j, &c) in a.iter().rev().enumerate() {
            m[r][r + j] = c;
        }
    }
    for r in 0..da {
        for (j, &c) in b.iter().rev().enumerate() {
            m[db + r][r + j] = c;
        }
    }
    m
}

fn trim(c: &[i64]) -> &[i64] {
    let len = c.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &c[..len]
}

/// `Res(P, P') == 0`, decided exactly: a nonzero residue proves it nonzero;
/// vanishing modulo primes whose product exceeds the Hadamard bound proves
/// it zero.
pub fn discriminant_vanishes(coeffs: &[i64]) -> bool {
    let p = trim(coeffs);
    assert!(!p.is_empty(), "zero polynomial");
    if p.len() <= 2 {
        return false;
    }
    let dp: Vec<i64> = p.iter().enumerate().skip(1).map(|(j, &c)| j as i64 * c).collect();
    let m = sylvester(p, &dp);
    let log2_bound: f64 = m
        .iter()
        .map(|row| 0.5 * row.iter().map(|&x| (x as f64).powi(2)).sum::<f64>().log2())
        .sum();
    let mut covered = 0.0;
    for &q in &PRIMES {
        let mq = m
            .iter()
            .map(|row| row.iter().map(|&x| x.rem_euclid(q as i64) as u64).collect())
            .collect();
        if det_mod(mq, q) != 0 {
            return false;
        }
        covered += (q as f64).log2();
        if covered > log2_bound + 1.0 {
            return true;
        }
    }
    panic!("resultant bound 2^{log2_bound:.0} exceeds the prime product");
}

/// `(P(e), P'(e))` by direct summation.
pub fn value_and_slope(c: &[i64], e: i64) -> (i64, i64) {
    let mut v = 0;
    let mut d = 0;
    let mut pw = 1;
    for (j, &x) in c.iter().enumerate() {
        v += x * pw;
        if j + 1 < c.len() {
            d += (j as i64 + 1) * c[j + 1] * pw;
        }
        pw *= e;
    }
    (v, d)
}

/// Every vector in `alphabet^len`, in odometer order.
pub fn vectors(alphabet: &[i64], len: usize) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total = alphabet.len().pow(len as u32);
    (0..total).map(move |mut idx| {
        (0..len)
            .map(|_| {
                let c = alphabet[idx % alphabet.len()];
                idx /= alphabet.len();
                c
            })
            .collect()
    })
}

pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Exact `P(P(e) = 0, P'(e) = 0)` for `+-1` coefficients with
/// `P(xi = 1) = p`, by enumerating all `2^(n+1)` sign vectors.
pub fn enumerated_double_root_prob(n: usize, p: &BigRational, e: i64) -> BigRational {
    let len = n + 1;
    let mut by_plus = vec![0u64; len + 1];
    for v in vectors(&[-1, 1], len) {
        if value_and_slope(&v, e) == (0, 0) {
            by_plus[v.iter().filter(|&&x| x == 1).count()] += 1;
        }
    }
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (k, &cnt) in by_plus.iter().enumerate() {
        if cnt > 0 {
            total += BigRational::from_integer(cnt.into())
                * num_traits::pow(p.clone(), k)
                * num_traits::pow(q.clone(), len - k);
        }
    }
    total
}

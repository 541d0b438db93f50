//! Cyclotomic polynomials and Euler's totient.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;
use crate::error::{Error, Result};

/// Euler's totient by trial-division factorization.
pub fn totient(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("totient is defined for k >= 1".into()));
    }
    let mut n = k;
    let mut phi = k;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            phi -= phi / d;
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// Divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `k`-th cyclotomic polynomial, from
/// `Phi_k = (z^k - 1) / prod_{d | k, d < k} Phi_d` with exact division.
pub fn cyclotomic(k: u64) -> Result<IntPoly> {
    CyclotomicCache::default().get(k)
}

/// Memo table for repeated cyclotomic lookups within one computation.
#[derive(Debug, Default)]
pub struct CyclotomicCache {
    table: HashMap<u64, IntPoly>,
}

impl CyclotomicCache {
    pub fn get(&mut self, k: u64) -> Result<IntPoly> {
        if k == 0 {
            return Err(Error::Domain("cyclotomic index must be >= 1".into()));
        }
        if let Some(p) = self.table.get(&k) {
            return Ok(p.clone());
        }
        // divisors ascending, so each proper divisor's own divisors are ready
        for d in divisors(k) {
            if self.table.contains_key(&d) {
                continue;
            }
            let mut acc = &IntPoly::monomial(BigInt::one(), d as usize) - &IntPoly::one();
            for e in divisors(d) {
                if e == d {
                    continue;
                }
                let phi_e = &self.table[&e];
                acc = acc
                    .div_exact(phi_e)?
                    .expect("cyclotomic factors divide z^d - 1");
            }
            self.table.insert(d, acc);
        }
        Ok(self.table[&k].clone())
    }
}

//! Algebraic-number tools behind the probability bounds: root counts
//! outside a disc, square divisors of `P(3)`, Mahler measure, the
//! cyclotomic (Kronecker) test, small minimal polynomials with all
//! conjugates inside radius 2, and closed-form bound evaluators.

mod candidates;
pub mod roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactcount::CoeffDist;
use crate::polyint::{cyclotomic, totient, IntPoly};

pub use candidates::{enumerate_candidates, AlgebraicCandidate};
pub use roots::{aberth_roots, eigen_roots, roots};

/// Slack used when comparing numerical root moduli with a radius.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Jensen-formula bound `1 / ((1 - r) log(3r/2))` on the number of roots of
/// modulus at least `3/2`, for `2/3 < r < 1`.
pub fn jensen_bound(r: f64) -> Result<f64> {
    if !(r > 2.0 / 3.0 && r < 1.0) {
        return Err(Error::Domain(format!("jensen_bound needs 2/3 < r < 1, got {r}")));
    }
    Ok(1.0 / ((1.0 - r) * (1.5 * r).ln()))
}

/// Number of roots (with multiplicity) of modulus at least `radius`.
pub fn count_roots_outside(p: &IntPoly, radius: f64) -> Result<usize> {
    let rs = roots(p)?;
    Ok(rs.iter().filter(|z| z.norm() >= radius - BOUNDARY_TOL).count())
}

/// Smallest `k` in `[b, k_max]` with `k^2 | P(3)`.
pub fn p3_square_divisor(p: &IntPoly, b: u64, k_max: u64) -> Result<Option<u64>> {
    if b < 2 || k_max < b {
        return Err(Error::Domain(format!("need 2 <= B <= k_max, got B = {b}, k_max = {k_max}")));
    }
    let v = p.eval_i64(3);
    if v.is_zero() {
        return Ok(Some(b));
    }
    let small = v.abs().to_u128();
    for k in b..=k_max {
        let k2 = k as u128 * k as u128;
        let divides = match small {
            Some(x) => x % k2 == 0,
            None => v.mod_floor(&BigInt::from(k2)).is_zero(),
        };
        if divides {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exponent `gamma = -log(max atom) / log(sqrt 3)` for the divisibility
/// bound on `P(3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaExponent {
    pub gamma: f64,
    /// The largest atom is at least `1/sqrt(3)`, so `gamma <= 1` and the
    /// resulting bound says nothing.
    pub vacuous: bool,
}

pub fn gamma_exponent(dist: &CoeffDist) -> Result<GammaExponent> {
    let m = dist.max_atom();
    if m.is_one() {
        return Err(Error::DegenerateDist("an atom has mass 1".into()));
    }
    let mf = m.to_f64().expect("finite");
    let gamma = -mf.ln() / 3f64.sqrt().ln();
    let vacuous = !dist.satisfies_sqrt3_condition();
    if vacuous {
        log::warn!("largest atom {m} is at least 1/sqrt(3): gamma = {gamma:.4} and the P(3) bound is vacuous");
    }
    Ok(GammaExponent { gamma, vacuous })
}

/// `|lead| * prod max(1, |beta|)` over the complex roots. Root moduli within
/// `BOUNDARY_TOL` of 1 count as exactly 1.
pub fn mahler_measure(p: &IntPoly) -> Result<f64> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    let lead = lead.abs().to_f64().expect("finite");
    let mut log_m = lead.ln();
    for z in roots(p)? {
        let r = z.norm();
        if r > 1.0 + BOUNDARY_TOL {
            log_m += r.ln();
        }
    }
    Ok(log_m.exp())
}

/// `k` with `p = Phi_k` for a monic `p != z`, else `None`.
///
/// Decided by exact divisibility `p | z^k - 1` over the finite set
/// `{k : phi(k) = deg p}`, which lies below `2 deg(p)^2` because
/// `phi(k) >= sqrt(k/2)`. A hit is confirmed against `Phi_k` itself, so
/// reducible inputs such as `Phi_3 Phi_4 | z^12 - 1` give `None`.
pub fn cyclotomic_test(p: &IntPoly) -> Result<Option<u64>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(Error::Domain(format!("cyclotomic_test needs a monic polynomial, got {p}")));
    }
    if d == 0 {
        return Ok(None);
    }
    if p.coeffs()[0].is_zero() {
        // divisible by z: only z itself could be irreducible, and it is excluded
        return Err(Error::Domain(format!("{p} is divisible by z and has no cyclotomic index")));
    }
    let du = d as u64;
    let limit = 2 * du * du;
    let targets: Vec<u64> = (1..=limit).filter(|&k| totient(k).expect("k >= 1") == du).collect();
    let Some(&last) = targets.last() else {
        return Ok(None);
    };
    // residues of z^j modulo the monic p, lowest degree first
    let c = p.coeffs();
    let mut r: Vec<BigInt> = vec![BigInt::zero(); d];
    r[0] = BigInt::one();
    let mut next = targets.iter().peekable();
    for j in 1..=last {
        // multiply by z and reduce with z^d = -(c_0 + .. + c_{d-1} z^{d-1})
        let top = r.pop().expect("d >= 1");
        r.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (ri, ci) in r.iter_mut().zip(c) {
                *ri -= &top * ci;
            }
        }
        if next.peek() == Some(&&j) {
            next.next();
            if r[0].is_one() && r[1..].iter().all(Zero::is_zero) {
                return Ok((*p == cyclotomic(j)?).then_some(j));
            }
        }
    }
    Ok(None)
}

/// Dobrowolski-type floor `c' (log log(d+2) / log(d+2))^3` on `log M`.
pub fn dobrowolski_floor(d: u64, c_prime: f64) -> Result<f64> {
    if d < 1 || !(c_prime > 0.0) {
        return Err(Error::Domain(format!("need d >= 1 and c' > 0, got d = {d}, c' = {c_prime}")));
    }
    let l = (d as f64 + 2.0).ln();
    Ok(c_prime * (l.ln() / l).powi(3))
}

/// `(C / floor(n/k))^(3d/2)`: bound on the chance that a root of unity of
/// order `k` and degree `d` is a root of `P'`.
pub fn unity_root_prob_bound(n: u64, k: u64, d: u64, c: f64) -> Result<f64> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if d < 1 || !(c > 0.0) {
        return Err(Error::Domain(format!("need d >= 1 and C > 0, got d = {d}, C = {c}")));
    }
    Ok((c / (n / k) as f64).powf(1.5 * d as f64))
}

/// Smallest `j0` with `|alpha|^j0 >= 3` (or `<= 1/3` inside the disc).
pub fn off_circle_j0(modulus: f64) -> Result<u64> {
    if !(modulus > 0.0) || modulus == 1.0 || !modulus.is_finite() {
        return Err(Error::Domain(format!("modulus must be positive, finite and != 1, got {modulus}")));
    }
    let ratio = 3f64.ln() / modulus.ln().abs();
    Ok((ratio - 1e-12).ceil().max(1.0) as u64)
}

/// `exp(-n log 3 / (2 j0))`: bound on the chance that a number of the given
/// modulus is a root. Symmetric under `modulus -> 1/modulus`.
pub fn off_circle_prob_bound(n: u64, modulus: f64) -> Result<f64> {
    let j0 = off_circle_j0(modulus)?;
    Ok((-(n as f64) * 3f64.ln() / (2.0 * j0 as f64)).exp())
}

//! Greatest common divisors in `Q[z]`, normalized to primitive integer form.

use num_traits::Zero;

use super::modp::{self, P0, P1, P2};
use super::IntPoly;
use crate::error::{Error, Result};

/// Primitive gcd of `p` and `q` over the rationals (content one, positive
/// leading coefficient).
///
/// A constant gcd modulo a prime that divides neither leading coefficient
/// certifies a constant gcd over Q, so the common coprime case never touches
/// big-integer remainder sequences. Otherwise an exact primitive
/// pseudo-remainder sequence decides.
pub fn gcd_rational(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::GcdUndefined),
        (true, false) => return Ok(q.primitive_part()),
        (false, true) => return Ok(p.primitive_part()),
        _ => {}
    }
    if p.is_constant() || q.is_constant() {
        return Ok(IntPoly::one());
    }
    if modular_certifies_coprime(p, q) {
        return Ok(IntPoly::one());
    }
    Ok(primitive_prs(p, q))
}

fn modular_certifies_coprime(p: &IntPoly, q: &IntPoly) -> bool {
    fn attempt<const P: u64>(p: &IntPoly, q: &IntPoly) -> Option<bool> {
        let lp = modp::reduce_big::<P>(p.leading()?);
        let lq = modp::reduce_big::<P>(q.leading()?);
        if lp == 0 || lq == 0 {
            return None;
        }
        let a = p.coeffs().iter().map(modp::reduce_big::<P>).collect();
        let b = q.coeffs().iter().map(modp::reduce_big::<P>).collect();
        Some(modp::gcd_degree::<P>(a, b) == Some(0))
    }
    // one usable prime decides: constant certifies, nonconstant defers
    attempt::<P0>(p, q)
        .or_else(|| attempt::<P1>(p, q))
        .or_else(|| attempt::<P2>(p, q))
        .unwrap_or(false)
}

fn primitive_prs(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).expect("b is nonzero");
        a = b;
        b = r.primitive_part();
    }
    if a.is_constant() {
        return IntPoly::one();
    }
    debug_assert!(!a.leading().expect("nonzero").is_zero());
    a.primitive_part()
}

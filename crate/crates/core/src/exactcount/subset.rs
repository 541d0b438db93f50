//! Weighted subset dynamic program over (item, size, sum).
//!
//! For a law on `{-1, 1}`, `(P(e), P'(e)) = (a, b)` is the event that the set
//! `U = {j : e^j xi_j = 1}` has a prescribed size and element sum. This
//! module counts such sets directly, one index at a time, carrying the mass
//! of each choice. It shares no code with the Gaussian-binomial route or the
//! two-dimensional value DP and serves as an independent check on both.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::dp::{fits_u128, Cell};
use super::{CoeffDist, Sign};
use crate::error::{Error, Result};

fn run<C: Cell>(n: usize, w_in: [&C::W; 2], w_out: [&C::W; 2], size: usize, sum: usize, sign: Sign) -> C {
    // table[k][s]: mass of choices over the indices seen so far with |U| = k
    // and sum_U j = s
    let width = sum + 1;
    let mut table = vec![C::zero(); (size + 1) * width];
    table[0] = C::one();
    for j in 0..=n {
        // mass of eta_j = 1 depends on the parity of j when e = -1
        let parity = match sign {
            Sign::Plus => 0,
            Sign::Minus => j % 2,
        };
        let (win, wout) = (w_in[parity], w_out[parity]);
        let mut next = vec![C::zero(); table.len()];
        for k in 0..=size.min(j + 1) {
            for s in 0..width {
                let src = &table[k * width + s];
                if src.is_zero() {
                    continue;
                }
                next[k * width + s].mul_add(src, wout);
                if k < size && s + j < width {
                    next[(k + 1) * width + s + j].mul_add(src, win);
                }
            }
        }
        table = next;
    }
    table[size * width + sum].clone()
}

/// Exact `P(P(e) = a, P'(e) = b)` for a law without mass at zero, via the
/// subset table. Memory is `O(n^3)` cells; intended for `n` up to a few hundred
/// at the single target `(0, 0)` and much less elsewhere.
pub fn subset_atom(n: usize, dist: &CoeffDist, sign: Sign, (a, b): (i64, i64)) -> Result<BigRational> {
    if !dist.is_pm1() {
        return Err(Error::InvalidDist("the subset route needs a law on {-1, 1}".into()));
    }
    let len = n as i64 + 1;
    let tri = len * (len - 1) / 2;
    let eb = sign.value() * b;
    if (a + len) % 2 != 0 || (eb + tri) % 2 != 0 {
        return Ok(BigRational::zero());
    }
    let (size, sum) = ((a + len) / 2, (eb + tri) / 2);
    if size < 0 || size > len || sum < 0 || sum > tri {
        return Ok(BigRational::zero());
    }
    let (d, w) = dist.scaled();
    let denom = num_traits::pow(d.clone(), n + 1);
    // [even j, odd j]: eta_j = 1 means xi_j = +1 for even j or e = +1
    let (wp, wm) = (&w[2], &w[0]);
    let w_in = [wp, if sign == Sign::Plus { wp } else { wm }];
    let w_out = [wm, if sign == Sign::Plus { wm } else { wp }];
    let count: BigUint = if fits_u128(&d, n + 1) {
        let conv = |x: [&BigUint; 2]| x.map(<u128 as Cell>::weight);
        let (i, o) = (conv(w_in), conv(w_out));
        run::<u128>(n, [&i[0], &i[1]], [&o[0], &o[1]], size as usize, sum as usize, sign).to_big()
    } else {
        run::<BigUint>(n, w_in, w_out, size as usize, sum as usize, sign)
    };
    Ok(BigRational::new(count.into(), denom.into()))
}

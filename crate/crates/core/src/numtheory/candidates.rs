use num_complex::Complex64;
use rayon::prelude::*;

use super::{cyclotomic_test, eigen_roots, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::polyint::{gcd_rational, IntPoly};

/// Largest degree [`enumerate_candidates`] will search.
pub const MAX_CANDIDATE_DEGREE: usize = 4;

const RADIUS: f64 = 2.0;

/// A monic irreducible integer polynomial whose roots all lie in `|z| < 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCandidate {
    pub minpoly: IntPoly,
    pub degree: usize,
    pub mahler: f64,
    pub is_cyclotomic: bool,
    pub cyclotomic_index: Option<u64>,
    pub max_conjugate_modulus: f64,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Monic irreducible polynomials of degree `d` with every root of modulus
/// below 2, sorted by coefficient vector (lowest degree first).
///
/// The coefficient of `z^j` is the elementary symmetric function of order
/// `d - j` up to sign, so `|a_j| <= C(d, j) 2^(d-j)` bounds the search box.
pub fn enumerate_candidates(d: usize) -> Result<Vec<AlgebraicCandidate>> {
    if d < 1 || d > MAX_CANDIDATE_DEGREE {
        return Err(Error::Domain(format!(
            "candidate enumeration covers degrees 1..={MAX_CANDIDATE_DEGREE}, got {d}"
        )));
    }
    let bounds: Vec<i64> = (0..d).map(|j| binomial(d, j) << (d - j)).collect();
    let top = bounds[d - 1];
    let mut out: Vec<AlgebraicCandidate> = (-top..=top)
        .into_par_iter()
        .flat_map_iter(|lead| {
            let mut found = Vec::new();
            let mut a = vec![0i64; d + 1];
            a[d] = 1;
            a[d - 1] = lead;
            scan(&mut a, d - 1, &bounds, &mut found);
            found
        })
        .collect();
    out.sort_by(|x, y| lex_key(&x.minpoly).cmp(&lex_key(&y.minpoly)));
    Ok(out)
}

fn lex_key(p: &IntPoly) -> Vec<i64> {
    p.to_i64_vec().expect("small coefficients")
}

// fills a[0..fixed] and tests each completed vector
fn scan(a: &mut [i64], fixed: usize, bounds: &[i64], found: &mut Vec<AlgebraicCandidate>) {
    if fixed == 0 {
        if let Some(c) = test_candidate(a) {
            found.push(c);
        }
        return;
    }
    let j = fixed - 1;
    let mut b = bounds[j];
    if j == 0 {
        // |a_0| is the product of the root moduli, so below 2^d
        b = b.min((1 << (a.len() - 1)) - 1);
    }
    for v in -b..=b {
        a[j] = v;
        scan(a, j, bounds, found);
    }
}

fn test_candidate(a: &[i64]) -> Option<AlgebraicCandidate> {
    let d = a.len() - 1;
    if a[0] == 0 && d > 1 {
        return None;
    }
    let p = IntPoly::from_i64(a);
    let rs: Vec<Complex64> = if d == 1 {
        vec![Complex64::new(-a[0] as f64, 0.0)]
    } else {
        let c: Vec<f64> = a.iter().map(|&c| c as f64).collect();
        eigen_roots(&c).ok()?
    };
    let max_mod = rs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_mod >= RADIUS + BOUNDARY_TOL {
        return None;
    }
    if max_mod > RADIUS - BOUNDARY_TOL {
        let exact = on_radius_two(&p);
        log::info!("excluding {p}: a root has modulus {max_mod:.12} (exactly 2: {exact})");
        return None;
    }
    if !is_irreducible(a) {
        return None;
    }
    let mahler: f64 = rs.iter().map(|z| z.norm().max(1.0)).product();
    let cyclotomic_index = if d == 1 && a[0] == 0 { None } else { cyclotomic_test(&p).ok().flatten() };
    Some(AlgebraicCandidate {
        minpoly: p,
        degree: d,
        mahler,
        is_cyclotomic: cyclotomic_index.is_some(),
        cyclotomic_index,
        max_conjugate_modulus: max_mod,
    })
}

/// For irreducible `p`, some root has `|beta| = 2` only if `4/beta` (the
/// conjugate of such a root) is a root too, i.e. `p` shares a factor with
/// `z^d p(4/z)`.
fn on_radius_two(p: &IntPoly) -> bool {
    let d = p.degree().expect("nonzero");
    let mirrored: Vec<_> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * num_bigint::BigInt::from(4).pow(j as u32))
        .rev()
        .collect();
    let q = IntPoly::from_coeffs(mirrored);
    debug_assert_eq!(q.degree(), Some(d));
    gcd_rational(p, &q).map(|g| !g.is_constant()).unwrap_or(false)
}

// monic, degree <= 4: no integer root, and for degree 4 no monic quadratic
// factor z^2 + b z + c (with c | a_0)
fn is_irreducible(a: &[i64]) -> bool {
    let d = a.len() - 1;
    if d == 1 {
        return true;
    }
    let eval = |x: i64| a.iter().rev().fold(0i64, |acc, &c| acc * x + c);
    let a0 = a[0].abs();
    for r in 1..=a0 {
        if a0 % r == 0 && (eval(r) == 0 || eval(-r) == 0) {
            return false;
        }
    }
    if d < 4 {
        return true;
    }
    let p = IntPoly::from_i64(a);
    for c in -a0..=a0 {
        if c == 0 || a0 % c != 0 {
            continue;
        }
        // the quadratic's roots are roots of p, so |b| < 4 when p passes the
        // radius filter; the wider range keeps this test self-contained
        let bmax = 2 * (a0 + 1) + a.iter().map(|x| x.abs()).max().unwrap_or(0);
        for b in -bmax..=bmax {
            let quad = IntPoly::from_i64(&[c, b, 1]);
            if matches!(p.div_exact(&quad), Ok(Some(_))) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff_lists(d: usize) -> Vec<Vec<i64>> {
        enumerate_candidates(d).unwrap().iter().map(|c| lex_key(&c.minpoly)).collect()
    }

    #[test]
    fn degree_one() {
        assert_eq!(coeff_lists(1), vec![vec![-1, 1], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn degree_two_contains_known_members() {
        let l = coeff_lists(2);
        assert!(l.contains(&vec![1, 1, 1]));
        assert!(l.contains(&vec![-1, -1, 1]));
        // z^2 - 4 is reducible, z^2 + 4 has roots on |z| = 2
        assert!(!l.contains(&vec![4, 0, 1]));
        assert!(l.contains(&vec![-2, 0, 1]));
        let mut sorted = l.clone();
        sorted.sort();
        assert_eq!(l, sorted);
    }

    #[test]
    fn radius_two_boundary_is_exact() {
        assert!(on_radius_two(&IntPoly::from_i64(&[4, 0, 1])));
        assert!(on_radius_two(&IntPoly::from_i64(&[4, 2, 1])));
        assert!(!on_radius_two(&IntPoly::from_i64(&[1, 1, 1])));
    }

    #[test]
    fn irreducibility_small() {
        assert!(is_irreducible(&[1, 1, 1]));
        assert!(!is_irreducible(&[-1, 0, 1]));
        // (z^2 + 1)(z^2 + z + 1) has no rational root
        assert!(!is_irreducible(&[1, 1, 2, 1, 1]));
        assert!(is_irreducible(&[1, 1, 1, 1, 1]));
        // z^4 + 4 = (z^2 + 2z + 2)(z^2 - 2z + 2)
        assert!(!is_irreducible(&[4, 0, 0, 0, 1]));
    }

    #[test]
    fn out_of_budget() {
        assert!(enumerate_candidates(5).is_err());
        assert!(enumerate_candidates(0).is_err());
    }

    #[test]
    fn higher_degrees_are_consistent() {
        for d in 1..=4 {
            let cands = enumerate_candidates(d).unwrap();
            let box_size: i64 = (0..d).map(|j| 2 * (binomial(d, j) << (d - j)) + 1).product();
            assert!((cands.len() as i64) <= box_size);
            for c in &cands {
                assert_eq!(c.degree, d);
                assert!(c.max_conjugate_modulus < 2.0);
                assert!(c.mahler >= 1.0 - 1e-12);
                let is_z = c.minpoly == IntPoly::from_i64(&[0, 1]);
                if (c.mahler - 1.0).abs() < 1e-9 && !is_z {
                    assert!(c.is_cyclotomic, "{}", c.minpoly);
                }
                if c.is_cyclotomic {
                    assert_eq!(c.minpoly, crate::polyint::cyclotomic(c.cyclotomic_index.unwrap()).unwrap());
                } else if !is_z {
                    let floor = super::super::dobrowolski_floor(d as u64, 0.01).unwrap();
                    assert!(c.mahler.ln() > floor, "{}", c.minpoly);
                }
            }
            eprintln!("degree {d}: {} candidates", cands.len());
        }
    }
}

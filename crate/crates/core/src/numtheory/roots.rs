//! Numerical complex roots of real polynomials.
//!
//! Two independent routes: eigenvalues of the balanced companion matrix by
//! the Francis double-shift QR iteration (robust, `O(n^3)`), and the
//! Aberth-Ehrlich simultaneous iteration (`O(n^2)` per sweep), which is the
//! only practical choice for bulk root counting at degree a few hundred.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyint::IntPoly;

/// Above this degree [`roots`] switches from QR to Aberth-Ehrlich.
pub const QR_MAX_DEGREE: usize = 48;

/// All complex roots of `p` with multiplicity. Roots at zero are split off
/// exactly.
pub fn roots(p: &IntPoly) -> Result<Vec<Complex64>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let zeros = p.low_order();
    let coeffs: Vec<f64> = p.coeffs()[zeros..]
        .iter()
        .map(|c| num_traits::ToPrimitive::to_f64(c).expect("finite"))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    // each method is the other's fallback
    let found = if deg - zeros <= QR_MAX_DEGREE {
        eigen_roots(&coeffs).or_else(|_| aberth_roots(&coeffs))
    } else {
        aberth_roots(&coeffs).or_else(|_| eigen_roots(&coeffs))
    };
    out.extend(found?);
    Ok(out)
}

fn check_input(coeffs: &[f64]) -> Result<usize> {
    let n = coeffs.len().checked_sub(1).ok_or(Error::ZeroPolynomial)?;
    if coeffs[n] == 0.0 {
        return Err(Error::Domain("leading coefficient must be nonzero".into()));
    }
    Ok(n)
}

/// Roots as eigenvalues of the balanced companion matrix (lowest-degree
/// coefficient first, nonzero leading coefficient).
pub fn eigen_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = check_input(coeffs)?;
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]),
        _ => {}
    }
    // 1-based storage keeps the iteration close to its textbook form
    let mut a = Mat::new(n);
    let lead = coeffs[n];
    for j in 1..=n {
        a[(1, j)] = -coeffs[n - j] / lead;
    }
    for i in 2..=n {
        a[(i, i - 1)] = 1.0;
    }
    balance(&mut a);
    hqr(&mut a)
}

struct Mat {
    n: usize,
    v: Vec<f64>,
}

impl Mat {
    fn new(n: usize) -> Self {
        Self { n, v: vec![0.0; (n + 1) * (n + 1)] }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.v[i * (self.n + 1) + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.v[i * (self.n + 1) + j]
    }
}

/// Diagonal similarity by powers of two making row and column norms comparable.
fn balance(a: &mut Mat) {
    const RADIX: f64 = 2.0;
    let n = a.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 1..=n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let gi = 1.0 / f;
                for j in 1..=n {
                    a[(i, j)] *= gi;
                }
                for j in 1..=n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by shifted QR with deflation.
fn hqr(a: &mut Mat) -> Result<Vec<Complex64>> {
    const MAX_ITS: usize = 60;
    let n = a.n;
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[(i, j)].abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    while nn >= 1 {
        let mut its = 0;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 2 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() + s == s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[(nn - 1, nn - 1)];
            let mut w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_ITS {
                return Err(Error::NoConvergence(n));
            }
            if its == 10 || its == 20 || its == 40 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[(i, i)] -= x;
                }
                let s = a[(nn, nn - 1)].abs() + a[(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // look for two consecutive small subdiagonal elements
            let mut m = nn - 2;
            loop {
                let z = a[(m, m)];
                r = x - z;
                let s = y - z;
                p = (r * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - r - s;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }
            // double-shift QR step on rows l..nn and columns m..nn
            for k in m..nn {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nn - 1 { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nn - 1 {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * z;
                    }
                    a[(k + 1, j)] -= pp * y;
                    a[(k, j)] -= pp * x;
                }
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nn - 1 {
                        pp += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
            if l + 1 >= nn {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect())
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(j, log |c_j|)`, the standard Newton-polygon initialization.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| (j, c.abs().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let count = k - i;
        let radius = ((li - lk) / count as f64).exp();
        for m in 0..count {
            let angle = 2.0 * std::f64::consts::PI * m as f64 / count as f64 + 2.0 * std::f64::consts::PI * i as f64 / n as f64 + sigma;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// Newton correction `p(z) / p'(z)`, or `None` once `|p(z)|` is below the
/// Horner rounding bound. Outside the unit disc the reversed polynomial is
/// evaluated at `1/z` so high degrees cannot overflow.
fn newton_ratio(coeffs: &[f64], abs: &[f64], z: Complex64) -> Option<Complex64> {
    let n = coeffs.len() - 1;
    let tol = 8.0 * n as f64 * f64::EPSILON;
    let r = z.norm();
    if r <= 1.0 {
        let mut pv = Complex64::new(coeffs[n], 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        let mut bound = abs[n];
        for j in (0..n).rev() {
            dv = dv * z + pv;
            pv = pv * z + coeffs[j];
            bound = bound * r + abs[j];
        }
        if pv.norm() <= tol * bound {
            return None;
        }
        return Some(pv / dv);
    }
    // p(z) = z^n q(w) with w = 1/z and q the reversed polynomial, so
    // p/p' = z q / (n q - w q')
    let w = z.inv();
    let rw = w.norm();
    let mut qv = Complex64::new(coeffs[0], 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    let mut bound = abs[0];
    for j in 1..=n {
        dv = dv * w + qv;
        qv = qv * w + coeffs[j];
        bound = bound * rw + abs[j];
    }
    if qv.norm() <= tol * bound {
        return None;
    }
    Some(z * qv / (qv * n as f64 - w * dv))
}

/// Roots by the Aberth-Ehrlich iteration. Coefficients lowest degree first,
/// with nonzero constant and leading terms.
pub fn aberth_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    const MAX_SWEEPS: usize = 800;
    let n = check_input(coeffs)?;
    if coeffs[0] == 0.0 {
        return Err(Error::Domain("strip roots at zero before calling aberth_roots".into()));
    }
    if n <= 2 {
        return eigen_roots(coeffs);
    }
    let abs: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    let mut z = initial_guesses(coeffs);
    let mut done = vec![false; n];
    let mut remaining = n;
    for _ in 0..MAX_SWEEPS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let Some(ratio) = newton_ratio(coeffs, &abs, zi) else {
                done[i] = true;
                remaining -= 1;
                continue;
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s += (zi - zj).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                // a collision or a critical point: nudge off it and retry next sweep
                z[i] = zi * Complex64::from_polar(1.0 + 1e-7, 0.1) + 1e-12;
                continue;
            }
            z[i] = zi - step;
        }
        if remaining == 0 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(n))
}

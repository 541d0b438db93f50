//! Local limit theory for `X = (P(e), P'(e))`.
//!
//! Exact moments, the characteristic functions of `X` and of its Gaussian
//! surrogate `Y`, exact lattice Fourier inversion of `P(X = 0)`, the Gaussian
//! point mass, and the `L_n / n^2` asymptotic.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactcount::{CoeffDist, Sign};

/// Exact mean and covariance of `(P(e), P'(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentData {
    pub n: usize,
    pub sign: Sign,
    pub mu: [BigRational; 2],
    pub sigma: [[BigRational; 2]; 2],
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn f(r: &BigRational) -> f64 {
    r.to_f64().expect("finite rational")
}

impl MomentData {
    pub fn det(&self) -> BigRational {
        &self.sigma[0][0] * &self.sigma[1][1] - &self.sigma[0][1] * &self.sigma[1][0]
    }

    /// Exact positive-semidefiniteness check for a symmetric 2x2 matrix.
    pub fn is_psd(&self) -> bool {
        let s = &self.sigma;
        s[0][1] == s[1][0] && !s[0][0].is_negative() && !s[1][1].is_negative() && !self.det().is_negative()
    }

    pub fn mu_f64(&self) -> [f64; 2] {
        [f(&self.mu[0]), f(&self.mu[1])]
    }

    pub fn sigma_f64(&self) -> [[f64; 2]; 2] {
        let s = &self.sigma;
        [[f(&s[0][0]), f(&s[0][1])], [f(&s[1][0]), f(&s[1][1])]]
    }
}

/// `sum_{j=0}^n e^j`
fn sum_powers(n: i64, sign: Sign) -> i64 {
    match sign {
        Sign::Plus => n + 1,
        Sign::Minus => i64::from(n % 2 == 0),
    }
}

/// `sum_{j=0}^n j e^(j-1)`
fn sum_weighted_powers(n: i64, sign: Sign) -> i64 {
    match sign {
        Sign::Plus => n * (n + 1) / 2,
        Sign::Minus if n % 2 == 1 => (n + 1) / 2,
        Sign::Minus => -n / 2,
    }
}

/// Exact moments of `(P(e), P'(e))` under `dist`.
///
/// With `m = E xi` and `v = var xi`: `mu = m (sum e^j, sum j e^(j-1))` and
/// `Sigma = v [[n+1, e n(n+1)/2], [e n(n+1)/2, n(n+1)(2n+1)/6]]`.
pub fn moments(n: usize, dist: &CoeffDist, sign: Sign) -> Result<MomentData> {
    if n < 1 {
        return Err(Error::Domain("moments need n >= 1".into()));
    }
    let m = dist.mean();
    let v = dist.variance();
    let ni = n as i64;
    let e = sign.value();
    let mu = [&m * int(sum_powers(ni, sign)), &m * int(sum_weighted_powers(ni, sign))];
    let off = &v * int(e * ni * (ni + 1) / 2);
    let sigma = [
        [&v * int(ni + 1), off.clone()],
        [off, &v * int(ni * (ni + 1) * (2 * ni + 1) / 6)],
    ];
    Ok(MomentData { n, sign, mu, sigma })
}

/// `L_n`: `8 sqrt(3)/(pi v)` when `E xi = 0`, `4 sqrt(3)/(pi v)` otherwise,
/// and zero unless `4 | n + 1`.
pub fn l_constant(n: usize, dist: &CoeffDist) -> Result<f64> {
    let v = dist.variance();
    if v.is_zero() {
        return Err(Error::DegenerateDist("variance is zero".into()));
    }
    if (n + 1) % 4 != 0 {
        return Ok(0.0);
    }
    let c = if dist.mean().is_zero() { 8.0 } else { 4.0 };
    Ok(c * 3f64.sqrt() / (PI * f(&v)))
}

/// `L_n / n^2`, the leading term of `P(double root)` for laws on `{-1, 1}`.
///
/// A law with mass at zero is refused: there the probability tends to
/// `P(xi = 0)^2`, the chance of a double root at 0.
pub fn asymptotic_prob(n: usize, dist: &CoeffDist) -> Result<f64> {
    if !dist.p_zero().is_zero() {
        let p0 = dist.p_zero();
        return Err(Error::Domain(format!(
            "L_n/n^2 needs P(xi = 0) = 0; with mass at zero the double-root probability tends to P(xi = 0)^2 = {}",
            p0 * p0
        )));
    }
    if n < 1 {
        return Err(Error::Domain("asymptotic_prob needs n >= 1".into()));
    }
    Ok(l_constant(n, dist)? / (n as f64 * n as f64))
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is not a probability")))
    }
}

fn cis(turns: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * turns).sin_cos();
    Complex64::new(c, s)
}

/// Characteristic function of `(P(-1), P'(-1))` for coefficients on
/// `{-1, 1}` with `P(xi = 1) = p`:
/// `prod_j [p e^(i phi_j) + (1-p) e^(-i phi_j)]`,
/// `phi_j = 2 pi ((-1)^j t1 + j (-1)^(j-1) t2)`.
pub fn cf_poly_pair(theta: [f64; 2], n: usize, p: f64) -> Result<Complex64> {
    check_p(p)?;
    Ok(cf_unchecked(theta, n, p))
}

fn cf_unchecked(theta: [f64; 2], n: usize, p: f64) -> Complex64 {
    let a = cis(theta[0]);
    let b = cis(theta[1]);
    let a_inv = a.conj();
    let q = 1.0 - p;
    let mut acc = Complex64::one();
    // bj = b^j, kept on the unit circle
    let mut bj = Complex64::one();
    for j in 0..=n {
        let z = if j % 2 == 0 { a * bj.conj() } else { a_inv * bj };
        acc *= Complex64::new(z.re, (p - q) * z.im);
        bj *= b;
        if j % 64 == 63 {
            bj /= bj.norm();
            if acc.norm_sqr() < 1e-280 {
                return Complex64::zero();
            }
        }
    }
    acc
}

/// `e^(2 pi i <theta, mu> - 2 pi^2 theta^T Sigma theta)`
pub fn cf_gaussian(theta: [f64; 2], m: &MomentData) -> Complex64 {
    let mu = m.mu_f64();
    let s = m.sigma_f64();
    let [t1, t2] = theta;
    let quad = s[0][0] * t1 * t1 + 2.0 * s[0][1] * t1 * t2 + s[1][1] * t2 * t2;
    let phase = t1 * mu[0] + t2 * mu[1];
    cis(phase) * (-2.0 * PI * PI * quad).exp()
}

/// Uniform grid for the inversion integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionConfig {
    pub grid1: usize,
    pub grid2: usize,
    pub half_width1: f64,
    pub half_width2: f64,
}

impl InversionConfig {
    /// Smallest grid satisfying the exactness condition for degree `n`.
    pub fn for_degree(n: usize) -> Self {
        let (need1, need2) = Self::required(n);
        Self { grid1: need1, grid2: need2, half_width1: 0.25, half_width2: 0.25 }
    }

    /// `(n + 2, n(n+1)/2 + 1)`
    pub fn required(n: usize) -> (usize, usize) {
        (n + 2, n * (n + 1) / 2 + 1)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let (need1, need2) = Self::required(n);
        if self.grid1 < need1 || self.grid2 < need2 {
            return Err(Error::Nyquist { need1, need2, got1: self.grid1, got2: self.grid2 });
        }
        if !(self.half_width1 > 0.0 && self.half_width2 > 0.0) {
            return Err(Error::Domain("half widths must be positive".into()));
        }
        Ok(())
    }
}

/// Midpoints of `count` equal cells of `[-h, h]`; symmetric under negation.
fn midpoints(count: usize, h: f64) -> Vec<f64> {
    let step = 2.0 * h / count as f64;
    (0..count).map(|k| -h + (k as f64 + 0.5) * step).collect()
}

/// `P((P(-1), P'(-1)) = (0, 0))` by Fourier inversion on the lattice `2Z^2`.
///
/// When `4 | n + 1` both coordinates are even, so `X^` has period `1/2` in
/// each variable and `P(X = 0) = 4 * integral of X^ over [-1/4, 1/4]^2`. The
/// integrand is a trigonometric polynomial, and a uniform grid finer than
/// its bandwidth integrates it exactly; with the default half widths the
/// result is the grid average of `X^`.
pub fn lattice_point_prob(n: usize, p: f64, cfg: &InversionConfig) -> Result<f64> {
    check_p(p)?;
    if (n + 1) % 4 != 0 {
        return Err(Error::Domain(format!("lattice inversion needs 4 | n + 1, got n = {n}")));
    }
    cfg.check(n)?;
    let t1s = midpoints(cfg.grid1, cfg.half_width1);
    let t2s = midpoints(cfg.grid2, cfg.half_width2);
    // rows are summed independently and then combined in order
    let rows: Vec<f64> = t1s
        .par_iter()
        .map(|&t1| t2s.iter().map(|&t2| cf_unchecked([t1, t2], n, p).re).sum())
        .collect();
    let sum: f64 = rows.iter().sum();
    let area = 4.0 * cfg.half_width1 * cfg.half_width2;
    Ok(4.0 * area * sum / (cfg.grid1 * cfg.grid2) as f64)
}

/// `4 f_Y(0) = 4 / (2 pi sqrt(det Sigma)) * exp(-mu^T Sigma^-1 mu / 2)`, with
/// the determinant and quadratic form evaluated exactly.
pub fn gaussian_point_mass(m: &MomentData) -> Result<f64> {
    let det = m.det();
    if !det.is_positive() {
        return Err(Error::SingularCovariance);
    }
    let s = &m.sigma;
    let [m1, m2] = &m.mu;
    let quad = (&s[1][1] * m1 * m1 - int(2) * &s[0][1] * m1 * m2 + &s[0][0] * m2 * m2) / &det;
    Ok(4.0 / (2.0 * PI * f(&det).sqrt()) * (-0.5 * f(&quad)).exp())
}

/// `sup |X^ - Y^|` over a `samples x samples` grid on
/// `[-n^(-5/12), n^(-5/12)] x [-n^(-17/12), n^(-17/12)]`, for coefficients
/// on `{-1, 1}` with `P(xi = 1) = p`.
pub fn cf_gap_sup(n: usize, p: f64, samples: usize) -> Result<f64> {
    check_p(p)?;
    if n < 4 {
        return Err(Error::Domain("cf_gap_sup needs n >= 4".into()));
    }
    if samples == 0 {
        return Err(Error::Domain("samples must be positive".into()));
    }
    let prat = BigRational::from_float(p).expect("finite");
    let dist = CoeffDist::pm1(prat)?;
    let m = moments(n, &dist, Sign::Minus)?;
    let nf = n as f64;
    let (h1, h2) = (nf.powf(-5.0 / 12.0), nf.powf(-17.0 / 12.0));
    let axis = |h: f64| -> Vec<f64> {
        if samples == 1 {
            vec![0.0]
        } else {
            (0..samples).map(|k| -h + 2.0 * h * k as f64 / (samples - 1) as f64).collect()
        }
    };
    let (a1, a2) = (axis(h1), axis(h2));
    let sup = a1
        .par_iter()
        .map(|&t1| {
            a2.iter()
                .map(|&t2| (cf_unchecked([t1, t2], n, p) - cf_gaussian([t1, t2], &m)).norm())
                .fold(0.0, f64::max)
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(sup)
}

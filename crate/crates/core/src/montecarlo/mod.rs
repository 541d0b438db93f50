//! Seeded Monte Carlo estimates for degrees beyond exhaustive reach.
//!
//! Trial `t` draws its coefficients from a ChaCha8 stream keyed by the seed
//! with stream number `t`, so the tallies do not depend on how trials are
//! split across threads.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactcount::{CoeffDist, HuntReport};
use crate::polyint::IntPoly;
use crate::rootsense::{classify, default_k_max, double_at_unit, has_repeated_root_i64};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Exact inverse-CDF sampler for a [`CoeffDist`]: a uniform integer `u` in
/// `[0, D)` maps to `-1` below `D p_minus`, to `0` below `D (p_minus + p_zero)`
/// and to `+1` otherwise.
#[derive(Clone, Debug)]
pub struct CoeffSampler {
    kind: Thresholds,
}

#[derive(Clone, Debug)]
enum Thresholds {
    Word { d: u64, t1: u64, t2: u64, rem: u64 },
    Big { d: BigUint, t1: BigUint, t2: BigUint },
}

impl CoeffSampler {
    pub fn new(dist: &CoeffDist) -> Self {
        let (d, w) = dist.scaled();
        let t1 = w[0].clone();
        let t2 = &w[0] + &w[1];
        let kind = match (d.to_u64(), t1.to_u64(), t2.to_u64()) {
            (Some(d), Some(t1), Some(t2)) => Thresholds::Word { d, t1, t2, rem: (u64::MAX % d + 1) % d },
            _ => Thresholds::Big { d, t1, t2 },
        };
        Self { kind }
    }

    pub fn draw<R: RngCore>(&self, rng: &mut R) -> i64 {
        match &self.kind {
            Thresholds::Word { d, t1, t2, rem } => {
                // reject the top 2^64 mod d values so u is exactly uniform
                let u = loop {
                    let x = rng.next_u64();
                    if *rem == 0 || x < 0u64.wrapping_sub(*rem) {
                        break x % d;
                    }
                };
                bucket(u < *t1, u < *t2)
            }
            Thresholds::Big { d, t1, t2 } => {
                let bits = d.bits();
                let words = bits.div_ceil(32) as usize;
                let u = loop {
                    let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
                    let spare = words as u64 * 32 - bits;
                    if let Some(top) = digits.last_mut() {
                        *top >>= spare;
                    }
                    let u = BigUint::new(digits);
                    if &u < d {
                        break u;
                    }
                };
                bucket(&u < t1, &u < t2)
            }
        }
    }

    pub fn draw_vec<R: RngCore>(&self, len: usize, rng: &mut R) -> Vec<i64> {
        (0..len).map(|_| self.draw(rng)).collect()
    }
}

fn bucket(below1: bool, below2: bool) -> i64 {
    if below1 {
        -1
    } else if below2 {
        0
    } else {
        1
    }
}

/// The generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A degree-`n` polynomial with i.i.d. coefficients drawn from `dist`.
pub fn sample_poly<R: RngCore>(n: usize, dist: &CoeffDist, rng: &mut R) -> IntPoly {
    IntPoly::from_i64(&CoeffSampler::new(dist).draw_vec(n + 1, rng))
}

/// Events that [`estimate`] can count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// Some repeated complex root. The all-zero draw is tallied apart and
    /// never counted as a hit.
    DoubleRoot,
    /// `-1` or `+1` is a root of multiplicity at least 2 (the all-zero draw
    /// counts, as in the exact union probability).
    DoubleAtPm1,
    /// The integer is a root (the all-zero draw counts).
    RootAtInteger(i64),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::DoubleRoot => write!(f, "double_root"),
            Event::DoubleAtPm1 => write!(f, "double_at_pm1"),
            Event::RootAtInteger(a) => write!(f, "root_at_integer({a})"),
        }
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "double_root" => return Ok(Event::DoubleRoot),
            "double_at_pm1" => return Ok(Event::DoubleAtPm1),
            _ => {}
        }
        let arg = s
            .strip_prefix("root_at_integer")
            .map(|r| r.trim_start_matches(['(', ':', '=']).trim_end_matches(')'));
        match arg.map(str::parse::<i64>) {
            Some(Ok(a)) => Ok(Event::RootAtInteger(a)),
            _ => Err(Error::Domain(format!(
                "unknown event {s:?}; expected double_root, double_at_pm1 or root_at_integer(A)"
            ))),
        }
    }
}

impl Event {
    fn hit(self, c: &[i64]) -> bool {
        match self {
            Event::DoubleRoot => has_repeated_root_i64(c).unwrap_or(false),
            Event::DoubleAtPm1 => double_at_unit(c, 1) || double_at_unit(c, -1),
            Event::RootAtInteger(a) => vanishes_at(c, a),
        }
    }
}

fn vanishes_at(c: &[i64], a: i64) -> bool {
    let mut acc: i128 = 0;
    for &x in c.iter().rev() {
        match acc.checked_mul(a as i128).and_then(|v| v.checked_add(x as i128)) {
            Some(v) => acc = v,
            None => return IntPoly::from_i64(c).eval_i64(a).is_zero(),
        }
    }
    acc == 0
}

/// Monte Carlo estimate with a Wilson 95% interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub event: Event,
    pub n: usize,
    pub dist: CoeffDist,
    pub trials: u64,
    pub hits: u64,
    /// Draws of the all-zero polynomial.
    pub all_zero: u64,
    pub p_hat: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub seed: u64,
}

impl Estimate {
    /// Normal-approximation standard error `sqrt(p (1 - p) / trials)`.
    pub fn std_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.trials as f64).sqrt()
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci95_low <= p && p <= self.ci95_high
    }
}

/// Wilson score interval for `hits` successes in `trials` at normal quantile `z`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// Estimate `P(event)` for degree `n` from `trials` seeded draws.
pub fn estimate(event: Event, n: usize, dist: &CoeffDist, trials: u64, seed: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let sampler = CoeffSampler::new(dist);
    let (hits, all_zero) = (0..trials)
        .into_par_iter()
        .fold(
            || (0u64, 0u64),
            |(h, z), t| {
                let c = sampler.draw_vec(n + 1, &mut trial_rng(seed, t));
                if event == Event::DoubleRoot && c.iter().all(|&x| x == 0) {
                    return (h, z + 1);
                }
                let zero = c.iter().all(|&x| x == 0) as u64;
                (h + event.hit(&c) as u64, z + zero)
            },
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let (lo, hi) = wilson_interval(hits, trials, Z95);
    Ok(Estimate {
        event,
        n,
        dist: dist.clone(),
        trials,
        hits,
        all_zero,
        p_hat: hits as f64 / trials as f64,
        ci95_low: lo,
        ci95_high: hi,
        seed,
    })
}

/// Random search for repeated roots that are not roots of unity.
pub fn hunt_random(n: usize, dist: &CoeffDist, trials: u64, seed: u64) -> Result<HuntReport> {
    let sampler = CoeffSampler::new(dist);
    let hits: Vec<Vec<i64>> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let c = sampler.draw_vec(n + 1, &mut trial_rng(seed, t));
            if !has_repeated_root_i64(&c).unwrap_or(false) {
                return None;
            }
            let p = IntPoly::from_i64(&c);
            let k_max = default_k_max(p.degree().expect("nonzero"));
            match classify(&p, k_max) {
                Ok(r) if r.has_noncyclotomic_repeat => Some(Ok(c)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<_>>()?;
    Ok(HuntReport { n, scanned: trials, hits })
}

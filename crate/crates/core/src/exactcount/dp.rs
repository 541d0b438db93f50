//! Layered dynamic program for the joint law of two integer linear forms
//! `(sum c1_j xi_j, sum c2_j xi_j)` in independent coefficients `xi_j`.
//!
//! Cells hold scaled counts: with masses `w_x / D`, a cell after `m` items
//! holds `D^m` times its probability. Counts fit a `u128` whenever `D^m` does,
//! which covers most desk-scale queries without touching big integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::CoeffDist;

pub(crate) trait Cell: Clone {
    type W;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn weight(w: &BigUint) -> Self::W;
    /// `self += src * w`
    fn mul_add(&mut self, src: &Self, w: &Self::W);
    fn to_big(&self) -> BigUint;
}

impl Cell for u128 {
    type W = u128;

    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn weight(w: &BigUint) -> u128 {
        w.to_u128().expect("weight fits u128")
    }

    #[inline]
    fn mul_add(&mut self, src: &Self, w: &u128) {
        *self += src * w;
    }

    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Cell for BigUint {
    type W = BigUint;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn weight(w: &BigUint) -> BigUint {
        w.clone()
    }

    #[inline]
    fn mul_add(&mut self, src: &Self, w: &BigUint) {
        if !Zero::is_zero(src) {
            *self += src * w;
        }
    }

    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// `d^m` fits comfortably in a `u128`, so no scaled count can overflow.
pub(crate) fn fits_u128(d: &BigUint, m: usize) -> bool {
    d.bits() as u128 * m as u128 <= 126
}

#[derive(Clone, Debug)]
struct Grid<C> {
    lo1: i64,
    hi1: i64,
    lo2: i64,
    hi2: i64,
    cells: Vec<C>,
}

impl<C: Cell> Grid<C> {
    fn new(lo1: i64, hi1: i64, lo2: i64, hi2: i64) -> Self {
        let len = if lo1 > hi1 || lo2 > hi2 {
            0
        } else {
            ((hi1 - lo1 + 1) * (hi2 - lo2 + 1)) as usize
        };
        Self { lo1, hi1, lo2, hi2, cells: vec![C::zero(); len] }
    }

    fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn width(&self) -> usize {
        (self.hi2 - self.lo2 + 1) as usize
    }

    fn get(&self, s1: i64, s2: i64) -> Option<&C> {
        if s1 < self.lo1 || s1 > self.hi1 || s2 < self.lo2 || s2 > self.hi2 {
            return None;
        }
        let i = (s1 - self.lo1) as usize * self.width() + (s2 - self.lo2) as usize;
        Some(&self.cells[i])
    }

    fn row_mut(&mut self, s1: i64) -> &mut [C] {
        let w = self.width();
        let start = (s1 - self.lo1) as usize * w;
        &mut self.cells[start..start + w]
    }

    fn row(&self, s1: i64) -> &[C] {
        let w = self.width();
        let start = (s1 - self.lo1) as usize * w;
        &self.cells[start..start + w]
    }
}

/// Runs the DP over `items`. With a target, cells that can no longer reach
/// it are dropped as the remaining items shrink the reachable window.
fn run<C: Cell>(items: &[(i64, i64)], dist: &CoeffDist, target: Option<(i64, i64)>) -> Grid<C> {
    let (_, w) = dist.scaled();
    // xi = -1, 0, +1 shift the partial sums by -c, 0, +c
    let weights: Vec<(i64, C::W)> = [(-1, &w[0]), (0, &w[1]), (1, &w[2])]
        .into_iter()
        .filter(|(_, w)| !Zero::is_zero(*w))
        .map(|(x, w)| (x, C::weight(w)))
        .collect();

    let mut rest1: i64 = items.iter().map(|c| c.0.abs()).sum();
    let mut rest2: i64 = items.iter().map(|c| c.1.abs()).sum();
    let (mut f1, mut f2) = (0i64, 0i64);
    let window = |f1: i64, f2: i64, r1: i64, r2: i64| -> (i64, i64, i64, i64) {
        match target {
            None => (-f1, f1, -f2, f2),
            Some((a, b)) => ((-f1).max(a - r1), f1.min(a + r1), (-f2).max(b - r2), f2.min(b + r2)),
        }
    };

    let (lo1, hi1, lo2, hi2) = window(0, 0, rest1, rest2);
    let mut grid = Grid::<C>::new(lo1, hi1, lo2, hi2);
    if grid.is_empty() {
        return grid;
    }
    *grid.row_mut(0).get_mut((-lo2) as usize).expect("origin in window") = C::one();

    for &(c1, c2) in items {
        f1 += c1.abs();
        f2 += c2.abs();
        rest1 -= c1.abs();
        rest2 -= c2.abs();
        let (lo1, hi1, lo2, hi2) = window(f1, f2, rest1, rest2);
        let mut next = Grid::<C>::new(lo1, hi1, lo2, hi2);
        if next.is_empty() {
            return next;
        }
        for s1 in grid.lo1..=grid.hi1 {
            let src = grid.row(s1);
            for (x, wx) in &weights {
                let t1 = s1 + x * c1;
                if t1 < next.lo1 || t1 > next.hi1 {
                    continue;
                }
                let shift = x * c2;
                // source column s2 lands on s2 + shift
                let from = grid.lo2.max(next.lo2 - shift);
                let to = grid.hi2.min(next.hi2 - shift);
                if from > to {
                    continue;
                }
                let (nlo2, glo2) = (next.lo2, grid.lo2);
                let dst = next.row_mut(t1);
                let src_seg = &src[(from - glo2) as usize..=(to - glo2) as usize];
                let dst_seg = &mut dst[(from + shift - nlo2) as usize..=(to + shift - nlo2) as usize];
                for (d, s) in dst_seg.iter_mut().zip(src_seg) {
                    d.mul_add(s, wx);
                }
            }
        }
        grid = next;
    }
    grid
}

/// Exact joint law of two linear forms, as scaled counts over `denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointTable {
    denom: BigUint,
    cells: BTreeMap<(i64, i64), BigUint>,
}

impl JointTable {
    /// Common denominator `D^m` of all probabilities.
    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn count(&self, a: i64, b: i64) -> BigUint {
        self.cells.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn prob(&self, a: i64, b: i64) -> BigRational {
        ratio(&self.count(a, b), &self.denom)
    }

    /// Nonzero cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &BigUint)> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `sum count * a^i b^j` over the cells, for `i + j <= 2`, as
    /// `[1, a, b, aa, ab, bb]`.
    fn power_sums(&self) -> [BigInt; 6] {
        let mut s: [BigInt; 6] = Default::default();
        for (&(a, b), c) in &self.cells {
            let c = BigInt::from(c.clone());
            let ca = &c * a;
            let cb = &c * b;
            s[3] += &ca * a;
            s[4] += &ca * b;
            s[5] += &cb * b;
            s[1] += ca;
            s[2] += cb;
            s[0] += c;
        }
        s
    }

    /// Exact mean vector.
    pub fn mean(&self) -> [BigRational; 2] {
        let s = self.power_sums();
        let d = BigInt::from(self.denom.clone());
        [BigRational::new(s[1].clone(), d.clone()), BigRational::new(s[2].clone(), d)]
    }

    /// Exact covariance matrix.
    pub fn covariance(&self) -> [[BigRational; 2]; 2] {
        let s = self.power_sums();
        let d = BigRational::from_integer(self.denom.clone().into());
        let e = |i: usize| BigRational::from_integer(s[i].clone()) / &d;
        let (m1, m2) = (e(1), e(2));
        let s11 = e(3) - &m1 * &m1;
        let s12 = e(4) - &m1 * &m2;
        let s22 = e(5) - &m2 * &m2;
        [[s11, s12.clone()], [s12, s22]]
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.clone().into(), den.clone().into())
}

fn denom_for(dist: &CoeffDist, m: usize) -> BigUint {
    num_traits::pow(dist.scaled().0, m)
}

fn table_from<C: Cell>(grid: &Grid<C>, denom: BigUint) -> JointTable {
    let mut cells = BTreeMap::new();
    for s1 in grid.lo1..=grid.hi1 {
        for (k, c) in grid.row(s1).iter().enumerate() {
            if !c.is_zero() {
                cells.insert((s1, grid.lo2 + k as i64), c.to_big());
            }
        }
    }
    JointTable { denom, cells }
}

/// Full joint law of `(sum c1_j xi_j, sum c2_j xi_j)`.
pub fn items_table(items: &[(i64, i64)], dist: &CoeffDist) -> JointTable {
    let denom = denom_for(dist, items.len());
    if fits_u128(&dist.scaled().0, items.len()) {
        table_from(&run::<u128>(items, dist, None), denom)
    } else {
        table_from(&run::<BigUint>(items, dist, None), denom)
    }
}

/// Scaled count of `(sum c1_j xi_j, sum c2_j xi_j) = target`, over `D^m`.
pub(crate) fn items_count(items: &[(i64, i64)], dist: &CoeffDist, target: (i64, i64)) -> BigUint {
    fn pick<C: Cell>(g: &Grid<C>, (a, b): (i64, i64)) -> BigUint {
        g.get(a, b).map(Cell::to_big).unwrap_or_default()
    }
    if fits_u128(&dist.scaled().0, items.len()) {
        pick(&run::<u128>(items, dist, Some(target)), target)
    } else {
        pick(&run::<BigUint>(items, dist, Some(target)), target)
    }
}

/// Exact `P((sum c1_j xi_j, sum c2_j xi_j) = target)`.
pub fn items_atom(items: &[(i64, i64)], dist: &CoeffDist, target: (i64, i64)) -> BigRational {
    ratio(&items_count(items, dist, target), &denom_for(dist, items.len()))
}

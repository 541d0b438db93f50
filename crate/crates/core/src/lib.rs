//! Double roots of random polynomials with i.i.d. coefficients on {-1, 0, 1}.
//!
//! The crate computes the probability that `P(z) = xi_0 + xi_1 z + ... + xi_n z^n`
//! has a repeated root three ways: exactly (rational arithmetic over
//! exhaustive sweeps and dynamic programs), asymptotically (the `L_n / n^2`
//! law and its local-CLT ingredients) and by seeded Monte Carlo.
//!
//! Module map:
//!
//! - [`polyint`]: exact integer polynomials, gcd over Q, cyclotomics, totient.
//! - [`rootsense`]: repeated-root detection and classification.
//! - [`exactcount`]: censuses, spectral-null counts, exact atom probabilities.
//! - [`lclt`]: moments, characteristic functions, lattice Fourier inversion.
//! - [`numtheory`]: root counting, Mahler measure, candidate minimal polynomials
//!   and the probability-bound evaluators.
//! - [`montecarlo`]: reproducible sampling with Wilson intervals.

pub mod error;
pub mod exactcount;
pub mod lclt;
pub mod montecarlo;
pub mod numtheory;
pub mod polyint;
pub mod rootsense;

pub use error::{Error, Result};
pub use exactcount::{Alphabet, CensusResult, CoeffDist, JointAtomQuery, Sign};
pub use montecarlo::{Estimate, Event};
pub use polyint::IntPoly;
pub use rootsense::RootReport;

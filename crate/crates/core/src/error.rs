use thiserror::Error;

/// Errors raised by the library. Every variant is a caller mistake or an
/// input outside the documented domain of an operation; nothing here is
/// transient.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gcd undefined: both polynomials are zero")]
    GcdUndefined,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("all-zero polynomial has every point as root")]
    ZeroPolynomial,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("coefficient law is invalid: {0}")]
    InvalidDist(String),

    #[error("degenerate coefficient law: {0}")]
    DegenerateDist(String),

    #[error("duplicate weight {0}: the anti-concentration bound needs distinct weights")]
    DuplicateWeight(i64),

    #[error("enumeration of {required} vectors exceeds the budget of {budget}; use Monte Carlo (`mc`) for this degree")]
    BudgetExceeded { required: String, budget: String },

    #[error("grid too coarse for exact inversion: need grid1 >= {need1} and grid2 >= {need2}, got {got1} x {got2}")]
    Nyquist {
        need1: usize,
        need2: usize,
        got1: usize,
        got2: usize,
    },

    #[error("singular covariance matrix")]
    SingularCovariance,

    #[error("root finder did not converge for a degree-{0} polynomial")]
    NoConvergence(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

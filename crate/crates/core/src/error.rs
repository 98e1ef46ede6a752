use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    ZeroArgument,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("tile must contain 0 (got minimum {0})")]
    TileMissingZero(usize),
    #[error("duplicate element {0}")]
    DuplicateElement(i64),
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("divisor must be a nonzero monic polynomial")]
    NotMonic,
    #[error("window {window} is smaller than the modulus {modulus}")]
    WindowTooSmall { window: usize, modulus: usize },
    #[error("input is not a tiling: residue {residue} covered {count} times")]
    NotATiling { residue: usize, count: usize },
    #[error("interval length must be > 1, got {0}")]
    IntervalTooShort(usize),
    #[error("sub-tiling needs n > 2*diam(A): n = {n}, diam(A) = {diameter}")]
    IntervalHypothesis { n: usize, diameter: usize },
    #[error("diameter {requested} exceeds the search guard {limit}")]
    GuardExceeded { requested: usize, limit: usize },
    #[error("no quadratic construction for diameter {0}: needs D >= 388")]
    BelowThreshold(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

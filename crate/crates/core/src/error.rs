use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({i}, {j}) differs from ({j}, {i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("operator is not positive semidefinite: eigenvalue {eigenvalue} below -{tol}")]
    NotPsd { eigenvalue: f64, tol: f64 },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("multiplier is not finite at eigenvalue {lambda}")]
    NonFiniteMultiplier { lambda: f64 },
    #[error("band limit must be nonnegative, got {0}")]
    NegativeOmega(f64),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not band-limited to {omega}: spectral tail {tail}")]
    NotBandlimited { omega: f64, tail: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("K-functional parameter t must be positive, got {0}")]
    NonPositiveT(f64),
    #[error("invalid order: need alpha > n, got alpha = {alpha}, n = {n}")]
    InvalidOrder { alpha: f64, n: u32 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("kernel order must be even, got {0}")]
    OddOrder(u32),
    #[error("kernel order {n} too small for difference order {m} (need n >= m + 3)")]
    OrderTooSmall { n: u32, m: u32 },
    #[error("kernel of order {n} cannot be used with difference order {m}")]
    KernelOrderMismatch { n: u32, m: u32 },
    #[error("index k = {k} out of range 0..={m}")]
    IndexOutOfRange { k: u32, m: u32 },
    #[error("moment integral diverges: kernel order {n}, polynomial degree {degree}")]
    DivergentMoment { n: u32, degree: u32 },
    #[error("dyadic base must exceed 1, got {0}")]
    InvalidBase(f64),
    #[error("band {band} is not contained in PW_{bound}: tail {tail}")]
    MembershipViolation { band: usize, bound: f64, tail: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function domain error: x = {0} must be in (0, 50]")]
    GammaDomain(f64),

    #[error("unsupported order p = {order}; expected {expected}")]
    UnsupportedOrder { order: usize, expected: &'static str },

    #[error("invalid fractional order alpha = {alpha}: {reason}")]
    InvalidAlpha { alpha: f64, reason: &'static str },

    #[error("coefficient table too short: have {have} coefficients beyond index 0, need at least {need}")]
    TableTooShort { have: usize, need: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown bound family `{0}`")]
    UnknownBoundFamily(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("singular system for {scheme} scheme (alpha = {alpha}, M = {m}, tau = {tau})")]
    SingularSystem {
        scheme: &'static str,
        alpha: f64,
        m: usize,
        tau: f64,
    },

    #[error("non-finite value detected: {0}")]
    NonFinite(String),

    #[error("no monotone tail found below L = {0}")]
    NoMonotoneTail(usize),

    #[error("report I/O: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;

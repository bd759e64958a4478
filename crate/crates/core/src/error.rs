use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix or vector is empty")]
    Empty,
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("column {col} has norm {norm:e}, cannot normalize")]
    ZeroColumn { col: usize, norm: f64 },
    #[error("column {col} deviates from unit norm by {deviation:e}")]
    NotNormalized { col: usize, deviation: f64 },
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("row count mismatch: {left} vs {right}")]
    RowMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("alpha = {alpha} outside (0, 1 - 1/{n})")]
    AlphaOutOfRange { alpha: f64, n: usize },
    #[error("k = {k} outside [0, {dim}]")]
    KOutOfRange { k: usize, dim: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("signal is identically zero")]
    ZeroSignal,
    #[error("support set is empty")]
    EmptySupport,
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("dictionary has zero coherence; the certificate is trivial")]
    TrivialCoherence,
    #[error("t_max = {t_max} outside [1, {max}]")]
    TMaxOutOfRange { t_max: usize, max: usize },
    #[error("coherence parameter must be positive, got {0}")]
    NonPositiveMu(f64),
    #[error("no remaining indices to select from")]
    EmptyRemaining,
    #[error("sub-dictionary is rank deficient (smallest singular value {sigma_min:e})")]
    RankDeficient { sigma_min: f64 },
    #[error("dictionary has a trivial kernel")]
    TrivialKernel,
    #[error("exhaustive search would evaluate {count} supports (limit {limit})")]
    TooLarge { count: u128, limit: u128 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

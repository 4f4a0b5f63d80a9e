use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("array of length {got} does not match grid with {expected} points")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("homogeneous multiplier undefined at zero mode")]
    ZeroModeUndefined,
    #[error("homogeneous norm requires a zero-mean field (mean mode magnitude {0:e})")]
    NonzeroMean(f64),
    #[error("symbol {0} cannot act on a scalar field")]
    VectorOnlySymbol(&'static str),
    #[error("dyadic block {j} outside valid range [{min}, {max}]")]
    BlockOutOfRange { j: i32, min: i32, max: i32 },
    #[error("invalid Lebesgue exponent {0} (must be >= 1)")]
    InvalidExponent(f64),
    #[error("velocity is not divergence free: max |xi.u| = {residual:e} (tolerance {tolerance:e})")]
    Divergence { residual: f64, tolerance: f64 },
    #[error("insufficient padding for alias-free product: input has energy outside the 2/3 band")]
    Aliasing,
    #[error("invalid viscosities: {0}")]
    InvalidViscosity(String),
    #[error("effective velocity is only defined for normalized viscosities nu=chi=1/2, mu=kappa=1")]
    NotNormalized,
    #[error("time step {dt} violates CFL bound; use dt <= {suggested:e}")]
    Cfl { dt: f64, suggested: f64 },
    #[error("blow-up guard tripped at t={time}: max|u| grew from {initial:e} to {current:e}")]
    BlowUp { time: f64, initial: f64, current: f64 },
    #[error("Gevrey weight overflow: a*|xi|max = {0} exceeds 600")]
    GevreyOverflow(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("time samples are not strictly increasing")]
    UnorderedTimes,
    #[error("not enough samples: need {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("non-positive value {value} at t={time} in series '{label}'")]
    NonPositive { label: String, time: f64, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("snapshot {path}: bad magic bytes")]
    BadMagic { path: PathBuf },
    #[error("snapshot {path}: unsupported version {version}")]
    UnsupportedVersion { path: PathBuf, version: u32 },
    #[error("snapshot {path}: truncated file")]
    Truncated { path: PathBuf },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

//! Linearised micropolar system: symbol, eigenvalues, exact semigroup,
//! effective velocity and damped heat-kernel decay.

pub mod effective;
pub mod kernel;
pub mod propagator;
pub mod symbol;

pub use effective::{decoupled_residual, effective_velocity};
pub use kernel::{damped_kernel_check, damped_kernel_ratio, KernelReport};
pub use propagator::{exp2x2, linear_propagate, LinearPropagator};
pub use symbol::{
    asymptotics_report, eigen_2x2, eigenvalues, log_grid, spectrum_row, write_spectrum_csv, AsymptoticsReport,
    EigenPair, SpectrumRow, SymbolMatrix,
};

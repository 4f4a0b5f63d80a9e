//! Gevrey norms, analyticity-radius fits and checks of the Gevrey multiplier
//! estimates.

pub mod bilinear;
pub mod equivalence;
pub mod norm;
pub mod radius;
pub mod smoothing;

pub use bilinear::{bilinear_symbol_check, c2_threshold_scan, BilinearReport, SymbolParams, ThresholdScan, BILINEAR_BOUND};
pub use equivalence::{multiplier_equiv_check, EquivReport, EquivRow, EQUIV_BOUND, EQUIV_C1, EQUIV_C2};
pub use norm::{gevrey_norm, gevrey_weighted, inner_norm, Flavor, GevreyNorm, InnerNorm};
pub use radius::{radius_fit, shell_maxima, RadiusFit};
pub use smoothing::{smoothing_constant, smoothing_constant_check, SmoothingReport, SmoothingSetup};

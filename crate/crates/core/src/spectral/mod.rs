//! Grid, transforms, Fourier multipliers, projections, norms and snapshots.

pub mod fft;
mod field;
mod grid;
pub mod norms;
pub mod ops;
pub mod random;
pub mod snapshot;
pub mod transform;

pub use field::{SpectralField, State, VectorField, Viscosities};
pub use grid::{Grid3, GridTables};
pub use norms::{lp_norm, lp_norm_vector};
pub use ops::{apply_scalar, apply_vector, curl, divergence, gradient, helmholtz_split, leray_project, Symbol};
pub use snapshot::{load_snapshot, save_snapshot, Snapshot};

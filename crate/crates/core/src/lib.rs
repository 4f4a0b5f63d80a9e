//! Pseudo-spectral laboratory for the 3D incompressible micropolar equations
//!
//! ```text
//! ∂t u − (χ+ν)Δu + u·∇u + ∇π − 2χ∇×ω = 0
//! ∂t ω − μΔω + u·∇ω + 4χω − κ∇div ω − 2χ∇×u = 0
//! div u = 0
//! ```
//!
//! on the periodic box `[0, L)³`. The crate is organised bottom-up:
//!
//! - [`spectral`]: grid, FFTs, Fourier multipliers, projections, snapshots.
//! - [`lp`]: Littlewood-Paley blocks, Besov and Chemin-Lerner norms, Bony
//!   paraproducts.
//! - [`linear`]: symbol matrix of the linearised system, its eigenvalues and
//!   the exact per-mode semigroup.
//! - [`solver`]: integrating-factor Runge-Kutta time stepping of the full
//!   nonlinear system and initial-data generators.
//! - [`gevrey`]: Gevrey norms, analyticity-radius fits and multiplier checks.
//! - [`decay`]: power-law fits, decay experiments and verification suites.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and falls back to plain iteration otherwise.
//! Results are bit-identical in both modes.

pub mod decay;
pub mod error;
pub mod gevrey;
pub mod linear;
pub mod lp;
pub mod par;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Gevrey-weighted norms `‖e^{aΛ₁} f‖` and `‖e^{aΛ} f‖`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{besov_norm, BesovSpec, FieldLike};
use crate::spectral::ops::GEVREY_EXPONENT_CEILING;
use crate::spectral::Grid3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// `e^{a|ξ|₁}`.
    L1,
    /// `e^{a|ξ|}`.
    Euclid,
}

impl Flavor {
    #[inline]
    pub fn frequency(&self, grid: &Grid3, idx: usize) -> f64 {
        match self {
            Flavor::L1 => grid.xi_l1(idx),
            Flavor::Euclid => grid.xi_norm(idx),
        }
    }

    /// Largest frequency of this flavor on the lattice.
    pub fn lattice_max(&self, grid: &Grid3) -> f64 {
        let nyq = grid.nyquist_wavenumber();
        match self {
            Flavor::L1 => 3.0 * nyq,
            Flavor::Euclid => 3f64.sqrt() * nyq,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum InnerNorm {
    Lp(f64),
    Besov(BesovSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GevreyNorm {
    pub a: f64,
    pub flavor: Flavor,
    pub inner: InnerNorm,
}

/// Multiplies by `e^{a·freq(ξ)}`, refusing weights whose exponent could
/// exceed the overflow ceiling anywhere on the lattice.
pub fn gevrey_weighted<F: FieldLike>(f: &F, a: f64, flavor: Flavor) -> Result<F> {
    let grid = f.grid();
    let worst = a.abs() * flavor.lattice_max(&grid);
    if !worst.is_finite() || worst > GEVREY_EXPONENT_CEILING {
        return Err(Error::GevreyOverflow(worst));
    }
    Ok(f.masked(|i| (a * flavor.frequency(&grid, i)).exp()))
}

pub fn inner_norm<F: FieldLike>(f: &F, inner: &InnerNorm) -> Result<f64> {
    match inner {
        InnerNorm::Lp(p) => f.lp(*p),
        InnerNorm::Besov(spec) => besov_norm(f, spec),
    }
}

/// `‖e^{aΛ₁} f‖` or `‖e^{aΛ} f‖` in the inner norm.
pub fn gevrey_norm<F: FieldLike>(f: &F, gn: &GevreyNorm) -> Result<f64> {
    if !(gn.a >= 0.0) {
        return Err(Error::InvalidParameter(format!("Gevrey radius a = {} must be non-negative", gn.a)));
    }
    inner_norm(&gevrey_weighted(f, gn.a, gn.flavor)?, &gn.inner)
}

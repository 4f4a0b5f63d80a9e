//! Effective velocity `R = ∇×Pω + ½Δu` for normalised viscosities. Under the
//! linear dynamics `(u, R)` obey
//!
//! ```text
//! ∂t u − ½Δu = R
//! ∂t R + 2R − (3/2)ΔR = −¼Δ²u
//! ```

use crate::error::{Error, Result};
use crate::spectral::ops::i_cross;
use crate::spectral::{State, VectorField, Viscosities};

/// `R̂ = iξ×ω̂ − ½|ξ|²û` (the curl only sees the solenoidal part of `ω`).
pub fn effective_velocity(state: &State, visc: &Viscosities) -> Result<VectorField> {
    if !visc.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let grid = state.grid();
    let real = state.u.comps.iter().chain(state.omega.comps.iter()).all(|c| c.real);
    Ok(VectorField::from_mode_fn(grid, real, |i| {
        let xi = grid.wavevector(i);
        let x2 = grid.xi2_of_k2(grid.k2(i));
        let c = i_cross(xi, state.omega.at(i));
        let u = state.u.at(i);
        [0, 1, 2].map(|d| c[d] - u[d] * (0.5 * x2))
    }))
}

/// `∂t R + 2R − (3/2)ΔR + ¼Δ²u` with `∂t R` supplied by the caller.
pub fn decoupled_residual(dt_r: &VectorField, r: &VectorField, u: &VectorField) -> VectorField {
    let grid = r.grid();
    let real = r.comps.iter().all(|c| c.real);
    VectorField::from_mode_fn(grid, real, |i| {
        let x2 = grid.xi2_of_k2(grid.k2(i));
        let (a, b, c) = (dt_r.at(i), r.at(i), u.at(i));
        [0, 1, 2].map(|d| a[d] + b[d] * (2.0 + 1.5 * x2) + c[d] * (0.25 * x2 * x2))
    })
}

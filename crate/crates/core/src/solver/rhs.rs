//! Pseudo-spectral nonlinear terms
//!
//! ```text
//! f = −P div(u ⊗ u)      g = −u·∇ω
//! ```
//!
//! Real fields are transformed two at a time through one complex FFT, and all
//! products are truncated to the two-thirds band.

use num_complex::Complex64;

use crate::error::Result;
use crate::par;
use crate::spectral::ops::leray_mode;
use crate::spectral::fft::{fft3, Direction};
use std::sync::Arc;

use crate::spectral::{Grid3, GridTables, SpectralField, State, VectorField};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Per-grid tables reused by every evaluation of the nonlinear terms.
pub struct RhsWorkspace {
    grid: Grid3,
    tables: Arc<GridTables>,
}

impl RhsWorkspace {
    pub fn new(grid: Grid3) -> Self {
        Self {
            grid,
            tables: grid.tables(),
        }
    }

    /// Inverse transform of the real fields `a + i b` given per mode.
    fn inverse_pair<F>(&self, f: F) -> (Vec<f64>, Vec<f64>)
    where
        F: Fn(usize) -> (Complex64, Complex64) + Sync + Send,
    {
        let mut data = vec![ZERO; self.grid.len()];
        par::fill_indexed(&mut data, |k| {
            let (a, b) = f(k);
            a + I * b
        });
        fft3(self.grid.n(), &mut data, Direction::Inverse);
        let mut re = vec![0.0; data.len()];
        let mut im = vec![0.0; data.len()];
        par::fill_indexed(&mut re, |k| data[k].re);
        par::fill_indexed(&mut im, |k| data[k].im);
        (re, im)
    }

    /// Forward transform of two real sample arrays packed as `a + i b`; the
    /// result `H` separates as `â = (H + H̄(−k))/2`, `b̂ = −i(H − H̄(−k))/2`.
    fn forward_pair(&self, a: &[f64], b: &[f64]) -> Vec<Complex64> {
        let mut data = vec![ZERO; self.grid.len()];
        par::fill_indexed(&mut data, |k| Complex64::new(a[k], b[k]));
        fft3(self.grid.n(), &mut data, Direction::Forward);
        data
    }

    #[inline]
    fn split(&self, h: &[Complex64], k: usize) -> (Complex64, Complex64) {
        let x = h[k];
        let y = h[self.tables.partner[k] as usize].conj();
        ((x + y) * 0.5, (x - y) * Complex64::new(0.0, -0.5))
    }
}

fn field(grid: Grid3, coeffs: Vec<Complex64>) -> SpectralField {
    SpectralField { grid, coeffs, real: true }
}

/// `(f, g, max|u|)` without input checks; `u` and `ω` must be real and dealiased.
pub(crate) fn rhs_raw(ws: &RhsWorkspace, u: &VectorField, w: &VectorField) -> Result<(VectorField, VectorField, f64)> {
    let grid = ws.grid;
    if u.grid() != grid || w.grid() != grid {
        return Err(crate::Error::GridMismatch);
    }
    let n = grid.len();
    let xi = &ws.tables.xi;
    let uc = |c: usize, k: usize| u.comps[c].coeffs[k];
    // ∂_a ω_c
    let dw = |c: usize, a: usize, k: usize| I * xi[k][a] * w.comps[c].coeffs[k];
    let (u0, u1) = ws.inverse_pair(|k| (uc(0, k), uc(1, k)));
    let (u2, d00) = ws.inverse_pair(|k| (uc(2, k), dw(0, 0, k)));
    let (d01, d02) = ws.inverse_pair(|k| (dw(0, 1, k), dw(0, 2, k)));
    let (d10, d11) = ws.inverse_pair(|k| (dw(1, 0, k), dw(1, 1, k)));
    let (d12, d20) = ws.inverse_pair(|k| (dw(1, 2, k), dw(2, 0, k)));
    let (d21, d22) = ws.inverse_pair(|k| (dw(2, 1, k), dw(2, 2, k)));

    let max_u = par::max_indexed(n, |i| (u0[i] * u0[i] + u1[i] * u1[i] + u2[i] * u2[i]).sqrt());
    let prod = |f: &(dyn Fn(usize) -> f64 + Sync)| {
        let mut out = vec![0.0; n];
        par::fill_indexed(&mut out, f);
        out
    };
    let h_a = ws.forward_pair(&prod(&|i| u0[i] * u0[i]), &prod(&|i| u0[i] * u1[i]));
    let h_b = ws.forward_pair(&prod(&|i| u0[i] * u2[i]), &prod(&|i| u1[i] * u1[i]));
    let h_c = ws.forward_pair(&prod(&|i| u1[i] * u2[i]), &prod(&|i| u2[i] * u2[i]));
    let g0 = prod(&|i| -(u0[i] * d00[i] + u1[i] * d01[i] + u2[i] * d02[i]));
    let g1 = prod(&|i| -(u0[i] * d10[i] + u1[i] * d11[i] + u2[i] * d12[i]));
    let g2 = prod(&|i| -(u0[i] * d20[i] + u1[i] * d21[i] + u2[i] * d22[i]));
    let h_g01 = ws.forward_pair(&g0, &g1);
    let h_g2 = ws.forward_pair(&g2, &vec![0.0; n]);

    let f_modes = par::map_collect(n, |k| {
        if !ws.tables.dealiased[k] {
            return [ZERO; 3];
        }
        let (s00, s01) = ws.split(&h_a, k);
        let (s02, s11) = ws.split(&h_b, k);
        let (s12, s22) = ws.split(&h_c, k);
        let x = xi[k];
        let s = [[s00, s01, s02], [s01, s11, s12], [s02, s12, s22]];
        let div = [0, 1, 2].map(|a| -I * (x[0] * s[a][0] + x[1] * s[a][1] + x[2] * s[a][2]));
        leray_mode(x, div)
    });
    let g_modes = par::map_collect(n, |k| {
        if !ws.tables.dealiased[k] {
            return [ZERO; 3];
        }
        let (a, b) = ws.split(&h_g01, k);
        let (c, _) = ws.split(&h_g2, k);
        [a, b, c]
    });
    let unpack = |m: &[[Complex64; 3]]| {
        let comps = [0, 1, 2].map(|c| {
            let mut v = vec![ZERO; n];
            par::fill_indexed(&mut v, |k| m[k][c]);
            field(grid, v)
        });
        VectorField { comps }
    };
    Ok((unpack(&f_modes), unpack(&g_modes), max_u))
}

/// Nonlinear terms `(f, g)` of the state, with `u` in conservative and `ω` in
/// convective form.
pub fn nonlinear_rhs(state: &State) -> Result<(VectorField, VectorField)> {
    state.check_divergence_free()?;
    let (mut u, mut w) = (state.u.clone(), state.omega.clone());
    u.dealias();
    w.dealias();
    let (f, g, _) = rhs_raw(&RhsWorkspace::new(u.grid()), &u, &w)?;
    Ok((f, g))
}

/// `−P(u·∇u)` in convective form (dealiased), used as a cross-check of the
/// conservative form.
pub fn convective_velocity_term(u: &VectorField) -> Result<VectorField> {
    let mut u = u.clone();
    u.dealias();
    // the ω slot evaluates −u·∇(second argument)
    let (_, g, _) = rhs_raw(&RhsWorkspace::new(u.grid()), &u, &u)?;
    Ok(crate::spectral::leray_project(&g))
}

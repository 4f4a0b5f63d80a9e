//! Fourier multipliers and projections.

use num_complex::Complex64;

use super::field::{SpectralField, VectorField};
use super::grid::Grid3;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest admissible `a·|ξ|` for exponential (Gevrey) weights.
pub const GEVREY_EXPONENT_CEILING: f64 = 600.0;

/// Fourier multipliers understood by [`apply_scalar`] and [`apply_vector`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Symbol {
    /// `Δ`, symbol `−|ξ|²`.
    Laplacian,
    /// `∇×`, symbol `iξ×` (vector fields only).
    Curl,
    /// `∇div`, symbol `−ξ(ξ·)` (vector fields only).
    GradDiv,
    /// `Λˢ = (−Δ)^{s/2}`, symbol `|ξ|ˢ`.
    LambdaPow(f64),
    /// Heat semigroup `e^{tΔ}`, symbol `e^{−t|ξ|²}`.
    Heat(f64),
    /// `e^{aΛ₁}`, symbol `e^{a|ξ|₁}`.
    GevreyL1(f64),
    /// `e^{aΛ}`, symbol `e^{a|ξ|}`.
    GevreyL2(f64),
}

impl Symbol {
    fn name(&self) -> &'static str {
        match self {
            Symbol::Laplacian => "laplacian",
            Symbol::Curl => "curl",
            Symbol::GradDiv => "grad_div",
            Symbol::LambdaPow(_) => "lambda_pow",
            Symbol::Heat(_) => "heat",
            Symbol::GevreyL1(_) => "gevrey_l1",
            Symbol::GevreyL2(_) => "gevrey_l2",
        }
    }

    /// Scalar multiplier at mode `idx`; `None` for the vector-only symbols.
    pub fn scalar_value(&self, grid: &Grid3, idx: usize) -> Option<f64> {
        let xi2 = grid.xi2_of_k2(grid.k2(idx));
        Some(match *self {
            Symbol::Laplacian => -xi2,
            Symbol::LambdaPow(s) => {
                if idx == 0 {
                    if s == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    xi2.powf(0.5 * s)
                }
            }
            Symbol::Heat(t) => (-t * xi2).exp(),
            Symbol::GevreyL1(a) => (a * grid.xi_l1(idx)).exp(),
            Symbol::GevreyL2(a) => (a * xi2.sqrt()).exp(),
            Symbol::Curl | Symbol::GradDiv => return None,
        })
    }

    fn check(&self, grid: &Grid3, mean: f64, scale: f64) -> Result<()> {
        match *self {
            Symbol::LambdaPow(s) if s < 0.0 && mean > 1e-12 * scale => Err(Error::ZeroModeUndefined),
            Symbol::GevreyL1(a) => {
                let worst = a * 3.0 * grid.nyquist_wavenumber();
                if worst > GEVREY_EXPONENT_CEILING {
                    return Err(Error::GevreyOverflow(worst));
                }
                Ok(())
            }
            Symbol::GevreyL2(a) => {
                let worst = a * 3.0_f64.sqrt() * grid.nyquist_wavenumber();
                if worst > GEVREY_EXPONENT_CEILING {
                    return Err(Error::GevreyOverflow(worst));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Applies a scalar multiplier to a scalar field.
pub fn apply_scalar(f: &SpectralField, symbol: Symbol) -> Result<SpectralField> {
    if matches!(symbol, Symbol::Curl | Symbol::GradDiv) {
        return Err(Error::VectorOnlySymbol(symbol.name()));
    }
    symbol.check(&f.grid, f.mean().norm(), f.max_abs())?;
    let grid = f.grid;
    Ok(f.map_modes(|i| Complex64::new(symbol.scalar_value(&grid, i).unwrap_or(0.0), 0.0)))
}

/// Applies a multiplier to a vector field: scalar symbols act componentwise,
/// `Curl` and `GradDiv` use their algebraic Fourier formulas.
pub fn apply_vector(v: &VectorField, symbol: Symbol) -> Result<VectorField> {
    let grid = v.grid();
    match symbol {
        Symbol::Curl => Ok(curl(v)),
        Symbol::GradDiv => Ok(v.map_vectors(|i, c| {
            let xi = grid.wavevector(i);
            let d = dot(xi, c);
            [-d * xi[0], -d * xi[1], -d * xi[2]]
        })),
        _ => {
            symbol.check(&grid, v.mean_norm(), v.max_abs())?;
            let comps = [
                apply_scalar(&v.comps[0], symbol)?,
                apply_scalar(&v.comps[1], symbol)?,
                apply_scalar(&v.comps[2], symbol)?,
            ];
            VectorField::new(comps)
        }
    }
}

#[inline]
pub(crate) fn dot(xi: [f64; 3], c: [Complex64; 3]) -> Complex64 {
    c[0] * xi[0] + c[1] * xi[1] + c[2] * xi[2]
}

/// `iξ × c`.
#[inline]
pub(crate) fn i_cross(xi: [f64; 3], c: [Complex64; 3]) -> [Complex64; 3] {
    [
        I * (c[2] * xi[1] - c[1] * xi[2]),
        I * (c[0] * xi[2] - c[2] * xi[0]),
        I * (c[1] * xi[0] - c[0] * xi[1]),
    ]
}

/// `∇×v`.
pub fn curl(v: &VectorField) -> VectorField {
    let grid = v.grid();
    v.map_vectors(|i, c| i_cross(grid.wavevector(i), c))
}

/// `div v` as a scalar field.
pub fn divergence(v: &VectorField) -> SpectralField {
    let grid = v.grid();
    let mut out = SpectralField::zeros(grid);
    out.real = v.comps.iter().all(|c| c.real);
    crate::par::fill_indexed(&mut out.coeffs, |i| I * dot(grid.wavevector(i), v.at(i)));
    out
}

/// `∇f`.
pub fn gradient(f: &SpectralField) -> VectorField {
    let grid = f.grid;
    VectorField::from_mode_fn(grid, f.real, |i| {
        let xi = grid.wavevector(i);
        let c = f.coeffs[i];
        [I * c * xi[0], I * c * xi[1], I * c * xi[2]]
    })
}

/// `max_k |ξ·v̂(k)|`.
pub fn divergence_residual(v: &VectorField) -> f64 {
    let grid = v.grid();
    crate::par::max_indexed(grid.len(), |i| dot(grid.wavevector(i), v.at(i)).norm())
}

/// Per-mode Leray projection `v̂ − ξ(ξ·v̂)/|ξ|²`; the zero mode is kept.
#[inline]
pub(crate) fn leray_mode(xi: [f64; 3], c: [Complex64; 3]) -> [Complex64; 3] {
    let xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if xi2 == 0.0 {
        return c;
    }
    let d = dot(xi, c) / xi2;
    [c[0] - d * xi[0], c[1] - d * xi[1], c[2] - d * xi[2]]
}

/// Leray projector onto divergence-free fields.
pub fn leray_project(v: &VectorField) -> VectorField {
    let grid = v.grid();
    v.map_vectors(|i, c| leray_mode(grid.wavevector(i), c))
}

/// Splits `w = 𝒫w + 𝒬w` into its divergence-free part `𝒫w = (∇×∇×/−Δ) w`
/// and its curl-free part `𝒬w = (∇div/Δ) w`. The mean goes to `𝒫w`.
pub fn helmholtz_split(w: &VectorField) -> (VectorField, VectorField) {
    let grid = w.grid();
    let p = leray_project(w);
    let q = w.map_vectors(|i, c| {
        let xi = grid.wavevector(i);
        let xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if xi2 == 0.0 {
            return [ZERO; 3];
        }
        let d = dot(xi, c) / xi2;
        [d * xi[0], d * xi[1], d * xi[2]]
    });
    (p, q)
}

//! Smoothing estimate for the Gevrey weight:
//!
//! ```text
//! ‖Λ^m f‖^ℓ_{Ḃ^s_{p,1}} ≤ C_m t^{−m/2} ‖e^{√t Λ₁} f‖^ℓ_{Ḃ^s_{p,∞}}
//! ‖Λ^m f‖^h_{Ḃ^s_{p,1}} ≤ C_m t^{−m/2} e^{−a√t} ‖e^{√t Λ₁} f‖^h_{Ḃ^s_{p,∞}},   a = 2^{j₀}/4
//! C_m = 1/(1 − 2^{−m}) + (8m)^m / (1 − e^{−1/8})
//! ```

use serde::Serialize;

use super::norm::Flavor;
use crate::error::{Error, Result};
use crate::lp::{besov_norm, BesovSpec, DyadicPartition, FieldLike};
use crate::spectral::random::random_spectral;
use crate::spectral::{apply_scalar, Grid3, SpectralField, Symbol};

/// `C_m = 1/(1 − 2^{−m}) + (8m)^m / (1 − e^{−1/8})`.
pub fn smoothing_constant(m: f64) -> f64 {
    1.0 / (1.0 - 2f64.powf(-m)) + (8.0 * m).powf(m) / (1.0 - (-0.125f64).exp())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmoothingSetup {
    pub grid: Grid3,
    /// Regularity and Lebesgue exponent of the Besov norms.
    pub s: f64,
    pub p: f64,
    /// Cut-off separating the low (`j ≤ j0`) and high blocks.
    pub j0: i32,
    /// `false` checks the low-frequency estimate, `true` the high-frequency one.
    pub high: bool,
    pub seed: u64,
}

impl SmoothingSetup {
    pub fn low(grid: Grid3, j0: i32, seed: u64) -> Self {
        Self {
            grid,
            s: 0.0,
            p: 2.0,
            j0,
            high: false,
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothingReport {
    pub m: f64,
    pub t: f64,
    pub high: bool,
    pub c_m: f64,
    pub trials: usize,
    /// Largest `LHS / (t^{−m/2} [e^{−a√t}] RHS)` over the trials.
    pub worst_ratio: f64,
    pub passed: bool,
}

fn random_band_field(setup: &SmoothingSetup, trial: u64) -> SpectralField {
    let grid = setup.grid;
    let lp = DyadicPartition::new(grid);
    let cut = (8.0 / 3.0) * 2f64.powi(setup.j0);
    let seed = setup.seed.wrapping_mul(1_000_003).wrapping_add(trial);
    let keep = |i: usize| {
        let r = grid.xi_norm(i);
        grid.in_dealiased_band(i) && if setup.high { lp.low_weight(setup.j0, i) < 1.0 } else { r <= cut }
    };
    // rough spectra with a random per-field tilt
    let tilt = (trial % 7) as f64 * 0.5 - 1.5;
    random_spectral(grid, seed, move |r| r.powf(tilt), keep)
}

pub fn smoothing_constant_check(m: f64, t: f64, trials: usize, setup: &SmoothingSetup) -> Result<SmoothingReport> {
    if !(m > 0.0) || !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("need m > 0 and t > 0, got m = {m}, t = {t}")));
    }
    let c_m = smoothing_constant(m);
    let band = |spec: BesovSpec| if setup.high { spec.high(setup.j0) } else { spec.low(setup.j0) };
    let lhs_spec = band(BesovSpec::new(setup.s, setup.p, 1.0));
    let rhs_spec = band(BesovSpec::new(setup.s, setup.p, f64::INFINITY));
    let a = 2f64.powi(setup.j0) / 4.0;
    let damping = if setup.high { (-a * t.sqrt()).exp() } else { 1.0 };
    let grid = setup.grid;
    let mut worst = 0.0_f64;
    for trial in 0..trials as u64 {
        let f = random_band_field(setup, trial);
        let lhs = besov_norm(&apply_scalar(&f, Symbol::LambdaPow(m))?, &lhs_spec)?;
        // the weight only matters on the support of f
        let sqrt_t = t.sqrt();
        let weighted = f.masked(|i| {
            if f.coeffs[i].norm() == 0.0 {
                0.0
            } else {
                (sqrt_t * Flavor::L1.frequency(&grid, i)).exp()
            }
        });
        if !weighted.is_finite() {
            return Err(Error::GevreyOverflow(sqrt_t * Flavor::L1.lattice_max(&grid)));
        }
        let rhs = besov_norm(&weighted, &rhs_spec)?;
        if rhs > 0.0 {
            worst = worst.max(lhs / (t.powf(-0.5 * m) * damping * rhs));
        }
    }
    Ok(SmoothingReport {
        m,
        t,
        high: setup.high,
        c_m,
        trials,
        worst_ratio: worst,
        passed: worst <= c_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_for_m_one() {
        let c = smoothing_constant(1.0);
        assert!((c - (2.0 + 8.0 / (1.0 - (-0.125f64).exp()))).abs() < 1e-12);
        assert!((c - 70.08).abs() < 0.01);
    }

    #[test]
    fn holds_on_a_few_fields() {
        let g = Grid3::new(16, 32.0).unwrap();
        let setup = SmoothingSetup::low(g, 0, 1);
        let r = smoothing_constant_check(1.0, 1.0, 5, &setup).unwrap();
        assert!(r.passed && r.worst_ratio > 0.0);
        let r = smoothing_constant_check(2.0, 0.5, 5, &SmoothingSetup { high: true, ..setup }).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

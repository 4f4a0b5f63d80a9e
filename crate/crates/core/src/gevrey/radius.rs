//! Analyticity-radius estimate from the decay of lattice shell maxima.
//!
//! Shell `s` holds the modes with `s − ½ ≤ |k| < s + ½`. For each shell the
//! largest coefficient magnitude `M_s` and the `|ξ|` of the mode attaining it
//! are recorded; the radius is minus the least-squares slope of `log M_s`
//! against that `|ξ|`, clamped at zero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::FieldLike;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusFit {
    pub radius_estimate: f64,
    /// Shell range `[s_lo, s_hi]` used.
    pub fit_window: (usize, usize),
    /// RMS residual of the log-linear fit.
    pub residual: f64,
    pub slope: f64,
    pub shells_used: usize,
}

/// `(|ξ| of the maximising mode, max |f̂|)` for every shell in the range.
pub fn shell_maxima<F: FieldLike>(f: &F, s_lo: usize, s_hi: usize) -> Vec<(usize, f64, f64)> {
    let grid = f.grid();
    let mut best: Vec<(f64, f64)> = vec![(0.0, 0.0); s_hi + 1];
    for idx in 0..grid.len() {
        let k = (grid.k2(idx) as f64).sqrt();
        let s = (k + 0.5).floor() as usize;
        if s < s_lo || s > s_hi {
            continue;
        }
        let a = f.mode_abs(idx);
        let xi = grid.xi_norm(idx);
        let slot = &mut best[s];
        if a > slot.1 || (a == slot.1 && a > 0.0 && xi < slot.0) {
            *slot = (xi, a);
        }
    }
    (s_lo..=s_hi).map(|s| (s, best[s].0, best[s].1)).collect()
}

pub fn radius_fit<F: FieldLike>(f: &F, shell_range: (usize, usize)) -> Result<RadiusFit> {
    let (s_lo, s_hi) = shell_range;
    if s_hi < s_lo {
        return Err(Error::InvalidParameter(format!("empty shell range {s_lo}..{s_hi}")));
    }
    let pts: Vec<(f64, f64)> = shell_maxima(f, s_lo, s_hi)
        .into_iter()
        .filter(|&(_, _, m)| m > 0.0)
        .map(|(_, x, m)| (x, m.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::TooFewSamples {
            needed: 4,
            got: pts.len(),
        });
    }
    if pts.iter().all(|p| p.1 == pts[0].1) {
        return Err(Error::Degenerate("all shell maxima are equal".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(RadiusFit {
        radius_estimate: (-slope).max(0.0),
        fit_window: (s_lo, s_hi),
        residual,
        slope,
        shells_used: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid3, SpectralField};
    use num_complex::Complex64;

    #[test]
    fn exact_exponential() {
        let g = Grid3::unit(32).unwrap();
        let mut f = SpectralField::zeros(g);
        for i in 1..g.len() {
            f.coeffs[i] = Complex64::new((-0.3 * g.xi_norm(i)).exp(), 0.0);
        }
        let r = radius_fit(&f, (1, 12)).unwrap();
        assert!((r.radius_estimate - 0.3).abs() < 1e-6, "{r:?}");
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn too_few_shells() {
        let g = Grid3::unit(8).unwrap();
        let mut f = SpectralField::zeros(g);
        f.coeffs[1] = Complex64::new(1.0, 0.0);
        assert!(radius_fit(&f, (1, 3)).is_err());
    }
}

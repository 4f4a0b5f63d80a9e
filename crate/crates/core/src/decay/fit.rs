//! Predicted decay exponents and power-law fits.
//!
//! For data with `u₀, Λω₀` of negative regularity `−σ` at low frequencies,
//!
//! ```text
//! ‖Λ^l u(t)‖_{L^r} ≲ t^{−(σ̃+l)/2}      ‖Λ^l ω(t)‖_{L^r} ≲ t^{−(σ̃−1+l)/2}      σ̃ = σ − 3/r + 3/p
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::NormSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    U,
    Omega,
}

impl Which {
    pub fn prefix(&self) -> &'static str {
        match self {
            Which::U => "u",
            Which::Omega => "omega",
        }
    }
}

fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `1 − 3/p < σ < min(1 + 3/p, 1 + 3/p′)`.
pub fn check_sigma(sigma: f64, p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let lo = 1.0 - 3.0 / p;
    let hi = (1.0 + 3.0 / p).min(1.0 + 3.0 / conjugate(p));
    if !(sigma > lo && sigma < hi) {
        return Err(Error::InvalidParameter(format!(
            "σ = {sigma} outside the admissible range ({lo}, {hi}) for p = {p}"
        )));
    }
    Ok(())
}

/// `σ̃ = σ − 3/r + 3/p`.
pub fn sigma_tilde(sigma: f64, r: f64, p: f64) -> f64 {
    sigma - 3.0 / r + 3.0 / p
}

/// Signed exponent of the predicted rate (negative means decay).
pub fn predicted_exponent(l: f64, r: f64, p: f64, sigma: f64, which: Which) -> Result<f64> {
    check_sigma(sigma, p)?;
    if !(r >= p) {
        return Err(Error::InvalidParameter(format!("need r ≥ p, got r = {r}, p = {p}")));
    }
    let st = sigma_tilde(sigma, r, p);
    let shift = match which {
        Which::U => 0.0,
        Which::Omega => 1.0,
    };
    if !(l > -st + shift) {
        return Err(Error::InvalidParameter(format!(
            "derivative order l = {l} must exceed {} for {}",
            -st + shift,
            which.prefix()
        )));
    }
    Ok(-(st - shift + l) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub exponent: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

pub const MIN_FIT_POINTS: usize = 5;

/// Least-squares fit of `log v = a + b log t` over samples with `t` in the
/// window; the exponent is `b`.
pub fn fit_points(times: &[f64], values: &[f64], label: &str, window: (f64, f64)) -> Result<DecayFit> {
    let tol = 1e-9 * window.1.abs().max(1.0);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < window.0 - tol || t > window.1 + tol {
            continue;
        }
        if !(v > 0.0) || !(t > 0.0) {
            return Err(Error::NonPositive {
                label: label.to_string(),
                time: t,
                value: v,
            });
        }
        xs.push(t.ln());
        ys.push(v.ln());
    }
    let n = xs.len();
    if n < MIN_FIT_POINTS {
        return Err(Error::TooFewSamples {
            needed: MIN_FIT_POINTS,
            got: n,
        });
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("fit window holds a single time".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (rss / (nf - 2.0) / sxx).sqrt();
    Ok(DecayFit {
        exponent: slope,
        stderr,
        window,
        n_points: n,
    })
}

pub fn fit_power_law(series: &NormSeries, label: &str, window: (f64, f64)) -> Result<DecayFit> {
    let values = series
        .column(label)
        .ok_or_else(|| Error::InvalidParameter(format!("no column `{label}`")))?;
    fit_points(&series.times, values, label, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions() {
        assert_eq!(predicted_exponent(0.0, 2.0, 2.0, 1.5, Which::U).unwrap(), -0.75);
        assert_eq!(predicted_exponent(0.0, 2.0, 2.0, 1.5, Which::Omega).unwrap(), -0.25);
        assert_eq!(predicted_exponent(2.0, 3.0, 3.0, 0.5, Which::U).unwrap(), -1.25);
        assert!(predicted_exponent(0.0, 1.0, 2.0, 1.5, Which::U).is_err());
        assert!(predicted_exponent(0.0, 2.0, 2.0, 2.5, Which::U).is_err());
        // σ̃ = 0.2: ω needs l > 0.8
        assert!(predicted_exponent(0.5, 2.0, 2.0, 0.2, Which::Omega).is_err());
    }

    #[test]
    fn exact_power() {
        let t: Vec<f64> = (0..20).map(|i| 1.2f64.powi(i)).collect();
        let v: Vec<f64> = t.iter().map(|t| 5.0 * t.powf(-2.0)).collect();
        let f = fit_points(&t, &v, "v", (1.0, 50.0)).unwrap();
        assert!((f.exponent + 2.0).abs() < 1e-12);
        assert!(f.stderr < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_and_short() {
        let t = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        assert!(matches!(
            fit_points(&t, &[1.0, 0.5, 0.0, 0.2, 0.1, 0.1], "v", (1.0, 6.0)),
            Err(Error::NonPositive { .. })
        ));
        assert!(matches!(
            fit_points(&t, &[1.0; 6], "v", (1.0, 4.0)),
            Err(Error::TooFewSamples { .. })
        ));
    }
}

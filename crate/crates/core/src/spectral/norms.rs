//! `L^r` norms on the unit-mass measure of the box, so `‖1‖_{L^r} = 1`.
//! Fields not flagged as real use the complex modulus.

use super::field::{SpectralField, VectorField};
use super::transform::vector_to_physical;
use crate::error::{Error, Result};
use crate::par;

pub(crate) fn check_exponent(r: f64) -> Result<()> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::InvalidExponent(r));
    }
    Ok(())
}

/// `(mean |x|^r)^{1/r}` of non-negative samples, `max` for `r = ∞`.
pub fn lp_norm_samples(samples: &[f64], r: f64) -> Result<f64> {
    check_exponent(r)?;
    let m = par::max_indexed(samples.len(), |i| samples[i].abs());
    if r.is_infinite() || m == 0.0 {
        return Ok(m);
    }
    let n = samples.len() as f64;
    let s = if r == 1.0 {
        par::sum_indexed(samples.len(), |i| samples[i].abs()) / m
    } else if r == 2.0 {
        par::sum_indexed(samples.len(), |i| (samples[i] / m).powi(2))
    } else {
        par::sum_indexed(samples.len(), |i| (samples[i].abs() / m).powf(r))
    };
    Ok(m * (s / n).powf(1.0 / r))
}

/// `‖f‖_{L^r}` of a scalar field. `r = 2` uses Parseval, everything else the
/// physical collocation samples.
pub fn lp_norm(f: &SpectralField, r: f64) -> Result<f64> {
    check_exponent(r)?;
    if r == 2.0 {
        return Ok(f.energy().sqrt());
    }
    if !f.real {
        let mag: Vec<f64> = f.to_physical_complex().iter().map(|c| c.norm()).collect();
        return lp_norm_samples(&mag, r);
    }
    lp_norm_samples(&f.to_physical(), r)
}

/// `‖ |v| ‖_{L^r}` with the pointwise Euclidean magnitude.
pub fn lp_norm_vector(v: &VectorField, r: f64) -> Result<f64> {
    check_exponent(r)?;
    if r == 2.0 {
        return Ok(v.energy().sqrt());
    }
    if v.comps.iter().any(|c| !c.real) {
        let [a, b, c] = [0, 1, 2].map(|d| v.comps[d].to_physical_complex());
        let mag: Vec<f64> = (0..a.len())
            .map(|i| (a[i].norm_sqr() + b[i].norm_sqr() + c[i].norm_sqr()).sqrt())
            .collect();
        return lp_norm_samples(&mag, r);
    }
    let [a, b, c] = vector_to_physical(v);
    let mag: Vec<f64> = (0..a.len())
        .map(|i| (a[i] * a[i] + b[i] * b[i] + c[i] * c[i]).sqrt())
        .collect();
    lp_norm_samples(&mag, r)
}

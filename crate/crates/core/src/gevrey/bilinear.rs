//! Pointwise bounds for the localised bilinear symbol
//!
//! ```text
//! M(ξ, η) = e^{γ(c|ξ+η| − c₁|ξ| − c₂|η|)} φ(2^{−j_hi}|ξ|) φ(2^{−j_lo}|η|),   j_lo ≤ j_hi − 2
//! ```
//!
//! checked by central differences: `|ξ||∇_ξ M| ≤ C` and `|η||∇_η M| ≤ C`.
//! The bounds rely on the exponent staying below `−|η|`; samples where it
//! does not are reported.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::phi;
use crate::spectral::random::rng;

pub const BILINEAR_BOUND: f64 = 16.0;
const EXPONENT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymbolParams {
    pub gamma: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub j_lo: i32,
    pub j_hi: i32,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExponentViolation {
    pub sample: usize,
    pub xi: [f64; 3],
    pub eta: [f64; 3],
    /// `c|ξ+η| − c₁|ξ| − c₂|η|`.
    pub exponent: f64,
    pub eta_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BilinearReport {
    pub params: SymbolParams,
    pub samples: usize,
    pub max_xi_bound: f64,
    pub max_eta_bound: f64,
    pub violation: Option<ExponentViolation>,
    pub passed: bool,
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl SymbolParams {
    pub fn exponent(&self, xi: [f64; 3], eta: [f64; 3]) -> f64 {
        self.c * norm(add(xi, eta)) - self.c1 * norm(xi) - self.c2 * norm(eta)
    }

    pub fn localized(&self, xi: [f64; 3], eta: [f64; 3]) -> f64 {
        let cut = phi(norm(xi) * 2f64.powi(-self.j_hi)) * phi(norm(eta) * 2f64.powi(-self.j_lo));
        if cut == 0.0 {
            0.0
        } else {
            (self.gamma * self.exponent(xi, eta)).exp() * cut
        }
    }

    fn validate(&self) -> Result<()> {
        if self.j_lo > self.j_hi - 2 {
            return Err(Error::InvalidParameter(format!(
                "need j_lo ≤ j_hi − 2, got j_lo = {}, j_hi = {}",
                self.j_lo, self.j_hi
            )));
        }
        if !(self.gamma >= 0.0) || !(self.c > 0.0 && self.c1 > 0.0 && self.c2 > 0.0) {
            return Err(Error::InvalidParameter("need γ ≥ 0 and c, c₁, c₂ > 0".into()));
        }
        Ok(())
    }
}

fn gradient_norm<F: Fn([f64; 3]) -> f64>(f: F, at: [f64; 3], h: f64) -> f64 {
    let mut s = 0.0;
    for k in 0..3 {
        let mut p = at;
        let mut m = at;
        p[k] += h;
        m[k] -= h;
        let d = (f(p) - f(m)) / (2.0 * h);
        s += d * d;
    }
    s.sqrt()
}

fn sample_in_annulus<R: Rng>(r: &mut R, j: i32) -> [f64; 3] {
    let lam = 2f64.powi(j);
    let rad = lam * r.gen_range(0.75..8.0 / 3.0);
    let mut d = [0.0; 3];
    loop {
        for v in d.iter_mut() {
            *v = r.sample(StandardNormal);
        }
        let n = norm(d);
        if n > 1e-8 {
            return [rad * d[0] / n, rad * d[1] / n, rad * d[2] / n];
        }
    }
}

pub fn bilinear_symbol_check(params: SymbolParams, samples: usize, seed: u64) -> Result<BilinearReport> {
    params.validate()?;
    let mut r = rng(seed);
    let mut max_xi = 0.0_f64;
    let mut max_eta = 0.0_f64;
    let mut violation = None;
    for s in 0..samples {
        let xi = sample_in_annulus(&mut r, params.j_hi);
        let eta = sample_in_annulus(&mut r, params.j_lo);
        let (nx, ne) = (norm(xi), norm(eta));
        let e = params.exponent(xi, eta);
        if violation.is_none() && e > -ne + EXPONENT_TOL * (nx + ne) {
            violation = Some(ExponentViolation {
                sample: s,
                xi,
                eta,
                exponent: e,
                eta_norm: ne,
            });
        }
        let gx = gradient_norm(|x| params.localized(x, eta), xi, 1e-6 * nx);
        let ge = gradient_norm(|y| params.localized(xi, y), eta, 1e-6 * ne);
        max_xi = max_xi.max(nx * gx);
        max_eta = max_eta.max(ne * ge);
    }
    let passed = violation.is_none() && max_xi <= BILINEAR_BOUND && max_eta <= BILINEAR_BOUND;
    Ok(BilinearReport {
        params,
        samples,
        max_xi_bound: max_xi,
        max_eta_bound: max_eta,
        violation,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdScan {
    pub candidates: Vec<f64>,
    pub passed: Vec<bool>,
    pub smallest_passing: Option<f64>,
}

/// Runs the check for every `c₂` candidate and every `γ`, recording which
/// candidates pass for all `γ`.
pub fn c2_threshold_scan(base: SymbolParams, candidates: &[f64], gammas: &[f64], samples: usize, seed: u64) -> Result<ThresholdScan> {
    let mut passed = Vec::with_capacity(candidates.len());
    for &c2 in candidates {
        let mut ok = true;
        for &gamma in gammas {
            let p = SymbolParams { c2, gamma, ..base };
            ok &= bilinear_symbol_check(p, samples, seed)?.passed;
        }
        passed.push(ok);
    }
    let smallest_passing = candidates.iter().zip(&passed).filter(|(_, &ok)| ok).map(|(&c, _)| c).reduce(f64::min);
    Ok(ThresholdScan {
        candidates: candidates.to_vec(),
        passed,
        smallest_passing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SymbolParams {
        SymbolParams {
            gamma: 1.0,
            c: 1.0,
            c1: 1.0,
            c2: 2.0,
            j_lo: 0,
            j_hi: 2,
        }
    }

    #[test]
    fn collinear_exponent() {
        let p = SymbolParams { c2: 1.0, ..base() };
        let e = p.exponent([5.0, 0.0, 0.0], [-1.0, 0.0, 0.0]);
        assert!((e + 2.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_zero_is_smooth() {
        let r = bilinear_symbol_check(SymbolParams { gamma: 0.0, ..base() }, 200, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn small_c2_is_reported() {
        let r = bilinear_symbol_check(SymbolParams { c2: 1.2, ..base() }, 500, 3).unwrap();
        let v = r.violation.expect("violation");
        assert!(v.exponent > -v.eta_norm);
        assert!(!r.passed);
    }

    #[test]
    fn rejects_close_levels() {
        assert!(bilinear_symbol_check(SymbolParams { j_hi: 1, ..base() }, 10, 1).is_err());
    }
}

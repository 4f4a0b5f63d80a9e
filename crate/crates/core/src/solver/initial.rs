//! Initial-data generators.
//!
//! - `Kato`: `u₀ = A sin(2πm x₃/L)(−∂₂Φ, ∂₁Φ, 0)` with `m = round(L/(2πε))`
//!   and the periodised Gaussian
//!   `Φ(x) = exp(−|d(x)|²/(2s²))`, `dᵢ = (L/π) sin(π(xᵢ − L/2)/L)`,
//!   `s = L/10`; `ω₀ = 0`.
//! - `TaylorGreen`: `u₀ = A (2π/L)(sin x cos y cos z, −cos x sin y cos z, 0)`
//!   in the rescaled coordinates `x = 2πx₁/L`, …; `ω₀ = 0`.
//! - `RandomSlope`: `|û₀| ∝ |ξ|^{σ−3/2}` (solenoidal, random direction) and
//!   `|ω̂₀| ∝ |ξ|^{σ−5/2}` on `0 < |ξ| ≤ band`, scaled so `‖u₀‖_{L²} = A`.
//!
//! Every generator returns a real, divergence-free velocity truncated to the
//! two-thirds band.

use serde::Serialize;

use super::config::KeyValues;
use crate::error::{Error, Result};
use crate::spectral::ops::leray_project;
use crate::spectral::random::random_spectral_vector;
use crate::spectral::{Grid3, SpectralField, State, VectorField};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum InitialData {
    Zero,
    Kato { epsilon: f64, amplitude: f64 },
    TaylorGreen { amplitude: f64 },
    /// `band` is the largest kept `|ξ|` (`None`: the whole dealiased band).
    RandomSlope {
        sigma: f64,
        amplitude: f64,
        band: Option<f64>,
    },
}

impl InitialData {
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let kind = kv.get("init.kind").unwrap_or("zero");
        Ok(match kind {
            "zero" => InitialData::Zero,
            "kato" | "kato_oscillating" => InitialData::Kato {
                epsilon: kv.f64_or("init.epsilon", 0.125)?,
                amplitude: kv.f64_or("init.amplitude", 1.0)?,
            },
            "taylor_green" => InitialData::TaylorGreen {
                amplitude: kv.f64_or("init.amplitude", 1.0)?,
            },
            "random_slope" => InitialData::RandomSlope {
                sigma: kv.f64_or("init.sigma", 1.5)?,
                amplitude: kv.f64_or("init.amplitude", 1.0)?,
                band: kv.get("init.band").map(|_| kv.f64_req("init.band")).transpose()?,
            },
            other => return Err(Error::Config(format!("unknown init.kind `{other}`"))),
        })
    }

    pub fn generate(&self, grid: Grid3, seed: u64) -> Result<State> {
        let mut u = match *self {
            InitialData::Zero => VectorField::zeros(grid),
            InitialData::Kato { epsilon, amplitude } => kato(grid, epsilon, amplitude)?,
            InitialData::TaylorGreen { amplitude } => taylor_green(grid, amplitude)?,
            InitialData::RandomSlope { sigma, amplitude, band } => {
                return random_slope(grid, sigma, amplitude, band, seed);
            }
        };
        u.dealias();
        u = leray_project(&u);
        State::new(u, VectorField::zeros(grid), 0.0)
    }
}

fn kato(grid: Grid3, epsilon: f64, amplitude: f64) -> Result<VectorField> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("Kato ε = {epsilon}")));
    }
    let l = grid.length();
    let m = (l / (2.0 * std::f64::consts::PI * epsilon)).round().max(1.0);
    let s = l / 10.0;
    let pi = std::f64::consts::PI;
    let phi = SpectralField::from_fn(grid, |x| {
        let d2: f64 = x
            .iter()
            .map(|&xi| {
                let d = (l / pi) * (pi * (xi - 0.5 * l) / l).sin();
                d * d
            })
            .sum();
        amplitude * (-d2 / (2.0 * s * s)).exp()
    })?;
    let grad = crate::spectral::gradient(&phi);
    let d1 = grad.comps[0].to_physical();
    let d2 = grad.comps[1].to_physical();
    let osc: Vec<f64> = (0..grid.len())
        .map(|i| (2.0 * pi * m * grid.point(i)[2] / l).sin())
        .collect();
    let u0: Vec<f64> = (0..grid.len()).map(|i| -osc[i] * d2[i]).collect();
    let u1: Vec<f64> = (0..grid.len()).map(|i| osc[i] * d1[i]).collect();
    let zero = vec![0.0; grid.len()];
    crate::spectral::transform::vector_from_physical(grid, [&u0, &u1, &zero])
}

fn taylor_green(grid: Grid3, amplitude: f64) -> Result<VectorField> {
    let k = 2.0 * std::f64::consts::PI / grid.length();
    let a = amplitude * k;
    let c0 = SpectralField::from_fn(grid, |x| a * (k * x[0]).sin() * (k * x[1]).cos() * (k * x[2]).cos())?;
    let c1 = SpectralField::from_fn(grid, |x| -a * (k * x[0]).cos() * (k * x[1]).sin() * (k * x[2]).cos())?;
    VectorField::new([c0, c1, SpectralField::zeros(grid)])
}

fn random_slope(grid: Grid3, sigma: f64, amplitude: f64, band: Option<f64>, seed: u64) -> Result<State> {
    if !sigma.is_finite() || !(amplitude >= 0.0) {
        return Err(Error::InvalidParameter(format!("random_slope σ = {sigma}, amplitude = {amplitude}")));
    }
    let cap = band.unwrap_or(f64::INFINITY);
    let keep = |i: usize| grid.in_dealiased_band(i) && grid.xi_norm(i) <= cap;
    let u = random_spectral_vector(grid, seed.wrapping_mul(2), |r| r.powf(sigma - 1.5), keep);
    let u = leray_project(&u);
    let w = random_spectral_vector(grid, seed.wrapping_mul(2).wrapping_add(1), |r| r.powf(sigma - 2.5), keep);
    let norm = u.energy().sqrt();
    if norm == 0.0 {
        return Err(Error::Degenerate("random_slope band contains no modes".into()));
    }
    let scale = amplitude / norm;
    State::new(u.scale(scale), w.scale(scale), 0.0)
}

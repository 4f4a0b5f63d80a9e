use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fft::{fft3, Direction};
use super::grid::Grid3;
use crate::error::{Error, Result};
use crate::par;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One scalar component in Fourier space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    pub grid: Grid3,
    pub coeffs: Vec<Complex64>,
    /// When set, the field represents a real function and coefficients obey
    /// `c(−k) = conj(c(k))`.
    pub real: bool,
}

impl SpectralField {
    pub fn zeros(grid: Grid3) -> Self {
        Self {
            grid,
            coeffs: vec![ZERO; grid.len()],
            real: true,
        }
    }

    pub fn from_coeffs(grid: Grid3, coeffs: Vec<Complex64>, real: bool) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::ShapeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("spectral coefficients"));
        }
        Ok(Self {
            grid,
            coeffs,
            real,
        })
    }

    /// Forward transform of real physical samples.
    pub fn from_physical(grid: Grid3, samples: &[f64]) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::ShapeMismatch {
                expected: grid.len(),
                got: samples.len(),
            });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("physical samples"));
        }
        let mut coeffs: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft3(grid.n(), &mut coeffs, Direction::Forward);
        let mut f = Self {
            grid,
            coeffs,
            real: true,
        };
        f.enforce_hermitian();
        Ok(f)
    }

    /// Samples a real function on the collocation grid and transforms it.
    pub fn from_fn<F>(grid: Grid3, f: F) -> Result<Self>
    where
        F: Fn([f64; 3]) -> f64 + Sync + Send,
    {
        let mut samples = vec![0.0; grid.len()];
        par::fill_indexed(&mut samples, |i| f(grid.point(i)));
        Self::from_physical(grid, &samples)
    }

    /// Complex physical values.
    pub fn to_physical_complex(&self) -> Vec<Complex64> {
        let mut data = self.coeffs.clone();
        fft3(self.grid.n(), &mut data, Direction::Inverse);
        data
    }

    /// Real physical samples (imaginary parts dropped).
    pub fn to_physical(&self) -> Vec<f64> {
        self.to_physical_complex().into_iter().map(|c| c.re).collect()
    }

    #[inline]
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Symmetrizes `c(k) ← (c(k) + conj(c(−k)))/2`; a no-op for complex fields.
    pub fn enforce_hermitian(&mut self) {
        if !self.real {
            return;
        }
        let grid = self.grid;
        let src = self.coeffs.clone();
        par::fill_indexed(&mut self.coeffs, |i| {
            let p = grid.partner(i);
            (src[i] + src[p].conj()) * 0.5
        });
    }

    /// Largest `|c(k) − conj(c(−k))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let grid = self.grid;
        par::max_indexed(grid.len(), |i| {
            (self.coeffs[i] - self.coeffs[grid.partner(i)].conj()).norm()
        })
    }

    pub fn zero_nyquist(&mut self) {
        let grid = self.grid;
        par::for_each_chunk_mut(&mut self.coeffs, par::REDUCE_CHUNK, |start, c| {
            for (o, v) in c.iter_mut().enumerate() {
                if grid.is_nyquist(start + o) {
                    *v = ZERO;
                }
            }
        });
    }

    /// Zeroes every mode outside the 2/3 band.
    pub fn dealias(&mut self) {
        let grid = self.grid;
        par::for_each_chunk_mut(&mut self.coeffs, par::REDUCE_CHUNK, |start, c| {
            for (o, v) in c.iter_mut().enumerate() {
                if !grid.in_dealiased_band(start + o) {
                    *v = ZERO;
                }
            }
        });
    }

    /// True when no energy lies outside the 2/3 band.
    pub fn is_dealiased(&self) -> bool {
        let grid = self.grid;
        par::max_indexed(grid.len(), |i| {
            if grid.in_dealiased_band(i) {
                0.0
            } else {
                self.coeffs[i].norm()
            }
        }) == 0.0
    }

    /// Multiplies each coefficient by `m(idx)`.
    pub fn map_modes<F>(&self, m: F) -> Self
    where
        F: Fn(usize) -> Complex64 + Sync + Send,
    {
        let mut out = vec![ZERO; self.coeffs.len()];
        par::fill_indexed(&mut out, |i| self.coeffs[i] * m(i));
        Self {
            grid: self.grid,
            coeffs: out,
            real: self.real,
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map_modes(|_| Complex64::new(a, 0.0))
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "axpy: grid mismatch");
        let mut out = vec![ZERO; self.coeffs.len()];
        par::fill_indexed(&mut out, |i| self.coeffs[i] + other.coeffs[i] * a);
        Self {
            grid: self.grid,
            coeffs: out,
            real: self.real && other.real,
        }
    }

    /// Spectral inner product `Σ a(k)·conj(b(k))`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let re = par::sum_indexed(self.coeffs.len(), |i| (self.coeffs[i] * other.coeffs[i].conj()).re);
        let im = par::sum_indexed(self.coeffs.len(), |i| (self.coeffs[i] * other.coeffs[i].conj()).im);
        Complex64::new(re, im)
    }

    /// `Σ|c(k)|²`, which equals the mean square of the physical samples.
    pub fn energy(&self) -> f64 {
        par::sum_indexed(self.coeffs.len(), |i| self.coeffs[i].norm_sqr())
    }

    pub fn max_abs(&self) -> f64 {
        par::max_indexed(self.coeffs.len(), |i| self.coeffs[i].norm())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Three spectral components on one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub comps: [SpectralField; 3],
}

impl VectorField {
    pub fn zeros(grid: Grid3) -> Self {
        Self {
            comps: [
                SpectralField::zeros(grid),
                SpectralField::zeros(grid),
                SpectralField::zeros(grid),
            ],
        }
    }

    pub fn new(comps: [SpectralField; 3]) -> Result<Self> {
        let g = comps[0].grid;
        if comps.iter().any(|c| c.grid != g) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { comps })
    }

    #[inline]
    pub fn grid(&self) -> Grid3 {
        self.comps[0].grid
    }

    #[inline]
    pub fn at(&self, idx: usize) -> [Complex64; 3] {
        [
            self.comps[0].coeffs[idx],
            self.comps[1].coeffs[idx],
            self.comps[2].coeffs[idx],
        ]
    }

    /// Builds a field from a per-mode map `idx → [c0, c1, c2]`.
    pub fn from_mode_fn<F>(grid: Grid3, real: bool, f: F) -> Self
    where
        F: Fn(usize) -> [Complex64; 3] + Sync + Send,
    {
        let mut packed = vec![[ZERO; 3]; grid.len()];
        par::fill_indexed(&mut packed, &f);
        let mut comps = [
            SpectralField::zeros(grid),
            SpectralField::zeros(grid),
            SpectralField::zeros(grid),
        ];
        for (d, c) in comps.iter_mut().enumerate() {
            c.real = real;
            par::fill_indexed(&mut c.coeffs, |i| packed[i][d]);
        }
        Self { comps }
    }

    /// Applies a per-mode linear map to the 3-vector of coefficients.
    pub fn map_vectors<F>(&self, f: F) -> Self
    where
        F: Fn(usize, [Complex64; 3]) -> [Complex64; 3] + Sync + Send,
    {
        let real = self.comps.iter().all(|c| c.real);
        Self::from_mode_fn(self.grid(), real, |i| f(i, self.at(i)))
    }

    pub fn map_components<F>(&self, f: F) -> Self
    where
        F: Fn(&SpectralField) -> SpectralField,
    {
        Self {
            comps: [f(&self.comps[0]), f(&self.comps[1]), f(&self.comps[2])],
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map_components(|c| c.scale(a))
    }

    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        Self {
            comps: [
                self.comps[0].axpy(a, &other.comps[0]),
                self.comps[1].axpy(a, &other.comps[1]),
                self.comps[2].axpy(a, &other.comps[2]),
            ],
        }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        (0..3).map(|d| self.comps[d].inner(&other.comps[d])).sum()
    }

    pub fn energy(&self) -> f64 {
        self.comps.iter().map(|c| c.energy()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    pub fn enforce_hermitian(&mut self) {
        self.comps.iter_mut().for_each(|c| c.enforce_hermitian());
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.comps.iter().map(|c| c.hermitian_defect()).fold(0.0, f64::max)
    }

    pub fn dealias(&mut self) {
        self.comps.iter_mut().for_each(|c| c.dealias());
    }

    pub fn zero_nyquist(&mut self) {
        self.comps.iter_mut().for_each(|c| c.zero_nyquist());
    }

    pub fn is_dealiased(&self) -> bool {
        self.comps.iter().all(|c| c.is_dealiased())
    }

    pub fn mean_norm(&self) -> f64 {
        self.comps.iter().map(|c| c.mean().norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.is_finite())
    }
}

/// Viscosity coefficients `ν, χ, μ, κ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viscosities {
    pub nu: f64,
    pub chi: f64,
    pub mu: f64,
    pub kappa: f64,
}

impl Viscosities {
    pub fn new(nu: f64, chi: f64, mu: f64, kappa: f64) -> Result<Self> {
        let v = Self { nu, chi, mu, kappa };
        v.validate()?;
        Ok(v)
    }

    /// `ν = χ = 1/2`, `μ = κ = 1`.
    pub fn normalized() -> Self {
        Self {
            nu: 0.5,
            chi: 0.5,
            mu: 1.0,
            kappa: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("nu", self.nu), ("chi", self.chi), ("mu", self.mu), ("kappa", self.kappa)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidViscosity(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// Same as [`Viscosities::validate`] but allows `χ = 0`, the Navier-Stokes
    /// reduction used by the solver.
    pub fn validate_allow_zero_chi(&self) -> Result<()> {
        if self.chi == 0.0 {
            return Self { chi: 1.0, ..*self }.validate();
        }
        self.validate()
    }

    /// `χ̄ = χ + ν`.
    #[inline]
    pub fn chi_bar(&self) -> f64 {
        self.chi + self.nu
    }

    pub fn is_normalized(&self) -> bool {
        *self == Self::normalized()
    }
}

/// Velocity and angular velocity at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub u: VectorField,
    pub omega: VectorField,
    pub time: f64,
}

impl State {
    pub fn zeros(grid: Grid3) -> Self {
        Self {
            u: VectorField::zeros(grid),
            omega: VectorField::zeros(grid),
            time: 0.0,
        }
    }

    pub fn new(u: VectorField, omega: VectorField, time: f64) -> Result<Self> {
        if u.grid() != omega.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { u, omega, time })
    }

    #[inline]
    pub fn grid(&self) -> Grid3 {
        self.u.grid()
    }

    /// `½(‖u‖²_{L²} + ‖ω‖²_{L²})` on the unit-mass measure.
    pub fn energy(&self) -> f64 {
        0.5 * (self.u.energy() + self.omega.energy())
    }

    /// `max_k |ξ·û(k)|`.
    pub fn divergence_residual(&self) -> f64 {
        super::ops::divergence_residual(&self.u)
    }

    /// Errors unless `max|ξ·û| ≤ 1e−10·max|û|`.
    pub fn check_divergence_free(&self) -> Result<()> {
        let residual = self.divergence_residual();
        let tolerance = 1e-10 * self.u.max_abs().max(f64::MIN_POSITIVE);
        if residual > tolerance {
            return Err(Error::Divergence {
                residual,
                tolerance,
            });
        }
        Ok(())
    }

    /// `a·self + b·other`, keeping `self.time`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        Self {
            u: self.u.scale(a).axpy(b, &other.u),
            omega: self.omega.scale(a).axpy(b, &other.omega),
            time: self.time,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.omega.is_finite()
    }
}

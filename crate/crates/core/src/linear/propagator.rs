//! Exact per-mode semigroup of the linearised system.
//!
//! `ω̂` is split into `Q̂ω = ξ(ξ·ω̂)/|ξ|²` and `P̂ω`. The longitudinal part
//! decays like `e^{−((μ+κ)|ξ|² + 4χ)t}`, while `(û, Ω̂)` with `Ω̂ = iξ×ω̂`
//! evolves by `exp(−tA(|ξ|))`; afterwards `P̂ω = iξ×Ω̂ / |ξ|²`. At `ξ = 0`
//! the mean velocity is conserved and the mean angular velocity decays like
//! `e^{−4χt}`.

use num_complex::Complex64;

use super::symbol::SymbolMatrix;
use crate::error::{Error, Result};
use crate::spectral::ops::{dot, i_cross};
use crate::spectral::{Grid3, SpectralField, State, VectorField, Viscosities};

/// `exp(B)` for a real 2×2 matrix, via
/// `e^m [cosh(s) I + sinh(s)/s (B − mI)]` with `m = tr B / 2`,
/// `s² = ((b₁₁ − b₂₂)/2)² + b₁₂b₂₁` (trigonometric when `s² < 0`).
pub fn exp2x2(b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let m = 0.5 * (b[0][0] + b[1][1]);
    let h = 0.5 * (b[0][0] - b[1][1]);
    let s2 = h * h + b[0][1] * b[1][0];
    let (c, sc) = if s2 >= 0.0 {
        let s = s2.sqrt();
        if s < 1e-4 {
            let em = m.exp();
            (em * (1.0 + 0.5 * s2 + s2 * s2 / 24.0), em * (1.0 + s2 / 6.0 + s2 * s2 / 120.0))
        } else if s < 30.0 {
            let em = m.exp();
            (em * s.cosh(), em * s.sinh() / s)
        } else {
            let (ep, em) = ((m + s).exp(), (m - s).exp());
            (0.5 * (ep + em), 0.5 * (ep - em) / s)
        }
    } else {
        let s = (-s2).sqrt();
        let em = m.exp();
        let sinc = if s < 1e-4 { 1.0 - s2.abs() / 6.0 } else { s.sin() / s };
        (em * s.cos(), em * sinc)
    };
    [
        [c + sc * (b[0][0] - m), sc * b[0][1]],
        [sc * b[1][0], c + sc * (b[1][1] - m)],
    ]
}

/// Per-`|k|²` table of the linear semigroup at a fixed time.
#[derive(Clone, Debug)]
pub struct LinearPropagator {
    grid: Grid3,
    visc: Viscosities,
    t: f64,
    coupled: Vec<[[f64; 2]; 2]>,
    longitudinal: Vec<f64>,
}

impl LinearPropagator {
    pub fn new(grid: Grid3, visc: Viscosities, t: f64) -> Result<Self> {
        visc.validate_allow_zero_chi()?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!("propagation time {t}")));
        }
        let kmax = grid.max_k2();
        let mut coupled = Vec::with_capacity(kmax + 1);
        let mut longitudinal = Vec::with_capacity(kmax + 1);
        for k2 in 0..=kmax {
            let x2 = grid.xi2_of_k2(k2);
            let a = SymbolMatrix::new(x2.sqrt(), visc)?.entries;
            coupled.push(exp2x2([[-t * a[0][0], -t * a[0][1]], [-t * a[1][0], -t * a[1][1]]]));
            longitudinal.push((-t * ((visc.mu + visc.kappa) * x2 + 4.0 * visc.chi)).exp());
        }
        Ok(Self {
            grid,
            visc,
            t,
            coupled,
            longitudinal,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn visc(&self) -> Viscosities {
        self.visc
    }

    /// Advances one mode `(û, ω̂)` at flat index `idx`.
    #[inline]
    pub fn apply_mode(&self, idx: usize, u: [Complex64; 3], w: [Complex64; 3]) -> ([Complex64; 3], [Complex64; 3]) {
        let xi = self.grid.wavevector(idx);
        self.advance_mode(self.grid.k2(idx), xi, u, w)
    }

    #[inline]
    fn advance_mode(
        &self,
        k2: usize,
        xi: [f64; 3],
        u: [Complex64; 3],
        w: [Complex64; 3],
    ) -> ([Complex64; 3], [Complex64; 3]) {
        if k2 == 0 {
            let d = (-4.0 * self.visc.chi * self.t).exp();
            return (u, w.map(|c| c * d));
        }
        let x2 = self.grid.xi2_of_k2(k2);
        let wl = dot(xi, w) / x2;
        let q = [xi[0] * wl, xi[1] * wl, xi[2] * wl];
        let big_omega = i_cross(xi, w);
        let e = self.coupled[k2];
        let mut u1 = [Complex64::new(0.0, 0.0); 3];
        let mut o1 = [Complex64::new(0.0, 0.0); 3];
        for d in 0..3 {
            u1[d] = u[d] * e[0][0] + big_omega[d] * e[0][1];
            o1[d] = u[d] * e[1][0] + big_omega[d] * e[1][1];
        }
        let pw = i_cross(xi, o1);
        let ld = self.longitudinal[k2];
        let inv = 1.0 / x2;
        let w1 = [0, 1, 2].map(|d| pw[d] * inv + q[d] * ld);
        (u1, w1)
    }

    /// Advances a `(u, ω)` pair without checking the divergence of `u`.
    pub fn apply_fields(&self, u: &VectorField, w: &VectorField) -> (VectorField, VectorField) {
        let tables = self.grid.tables();
        let n = self.grid.len();
        let mut packed = vec![[Complex64::new(0.0, 0.0); 6]; n];
        crate::par::fill_indexed(&mut packed, |i| {
            let uu = [u.comps[0].coeffs[i], u.comps[1].coeffs[i], u.comps[2].coeffs[i]];
            let ww = [w.comps[0].coeffs[i], w.comps[1].coeffs[i], w.comps[2].coeffs[i]];
            let (a, b) = self.advance_mode(tables.k2[i] as usize, tables.xi[i], uu, ww);
            [a[0], a[1], a[2], b[0], b[1], b[2]]
        });
        let comp = |c: usize, real: bool| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            crate::par::fill_indexed(&mut v, |i| packed[i][c]);
            SpectralField {
                grid: self.grid,
                coeffs: v,
                real,
            }
        };
        let ru = u.comps.iter().all(|c| c.real);
        let rw = w.comps.iter().all(|c| c.real);
        (
            VectorField {
                comps: [comp(0, ru), comp(1, ru), comp(2, ru)],
            },
            VectorField {
                comps: [comp(3, rw), comp(4, rw), comp(5, rw)],
            },
        )
    }

    /// Advances `(u, ω)` by the propagator time.
    pub fn apply(&self, state: &State) -> Result<State> {
        if state.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        state.check_divergence_free()?;
        let (u, omega) = self.apply_fields(&state.u, &state.omega);
        State::new(u, omega, state.time + self.t)
    }
}

/// Exact linear evolution of `state` over a time `t ≥ 0`.
pub fn linear_propagate(state: &State, t: f64, visc: &Viscosities) -> Result<State> {
    LinearPropagator::new(state.grid(), *visc, t)?.apply(state)
}

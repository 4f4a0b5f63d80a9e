//! Symbol of the linearised system and its eigenvalues.
//!
//! For divergence-free `u` and `Ω = ∇×Pω` the linear part reads, mode by mode,
//!
//! ```text
//! d/dt (û, Ω̂) = −A(ξ) (û, Ω̂),   A = [[ χ̄|ξ|²,   −2χ        ],
//!                                    [ −2χ|ξ|²,  μ|ξ|² + 4χ  ]]
//! ```
//!
//! with `χ̄ = χ + ν` and eigenvalues
//! `λ± = (tr ± √(tr² − 4 det)) / 2`. Since the off-diagonal product
//! `4χ²|ξ|²` is non-negative the discriminant is never negative for
//! admissible viscosities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::Viscosities;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymbolMatrix {
    pub xi_norm: f64,
    pub visc: Viscosities,
    pub entries: [[f64; 2]; 2],
}

impl SymbolMatrix {
    pub fn new(xi_norm: f64, visc: Viscosities) -> Result<Self> {
        if !(xi_norm >= 0.0) || !xi_norm.is_finite() {
            return Err(Error::InvalidParameter(format!("|ξ| = {xi_norm}")));
        }
        let x2 = xi_norm * xi_norm;
        let c = visc.chi;
        Ok(Self {
            xi_norm,
            visc,
            entries: [[visc.chi_bar() * x2, -2.0 * c], [-2.0 * c * x2, visc.mu * x2 + 4.0 * c]],
        })
    }

    /// `(χ̄ + μ)|ξ|² + 4χ`.
    pub fn trace(&self) -> f64 {
        let x2 = self.xi_norm * self.xi_norm;
        (self.visc.chi_bar() + self.visc.mu) * x2 + 4.0 * self.visc.chi
    }

    /// `χ̄μ|ξ|⁴ + 4νχ|ξ|²`.
    pub fn determinant(&self) -> f64 {
        let x2 = self.xi_norm * self.xi_norm;
        self.visc.chi_bar() * self.visc.mu * x2 * x2 + 4.0 * self.visc.nu * self.visc.chi * x2
    }

    /// `tr² − 4 det`, written as `(a − d)² + 4bc` to avoid cancellation.
    pub fn discriminant(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        (a - d) * (a - d) + 4.0 * b * c
    }
}

/// Decay exponents of the coupled `(u, Ω)` system. When the discriminant is
/// negative the pair is complex, `lambda_plus`/`lambda_minus` hold the common
/// real part and `imag` the imaginary part magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenPair {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub complex: bool,
    pub imag: f64,
}

/// Eigenvalues of a general real 2×2 matrix from trace, determinant and
/// discriminant `tr² − 4det`.
pub fn eigen_from_invariants(trace: f64, det: f64, disc: f64) -> EigenPair {
    if disc < 0.0 {
        return EigenPair {
            lambda_plus: 0.5 * trace,
            lambda_minus: 0.5 * trace,
            complex: true,
            imag: 0.5 * (-disc).sqrt(),
        };
    }
    let root = disc.sqrt();
    // larger-magnitude root first, the other from the product
    let big = 0.5 * (trace + trace.signum() * root);
    let (hi, lo) = if big == 0.0 {
        (0.0, 0.0)
    } else {
        let other = det / big;
        if big >= other {
            (big, other)
        } else {
            (other, big)
        }
    };
    EigenPair {
        lambda_plus: hi,
        lambda_minus: lo,
        complex: false,
        imag: 0.0,
    }
}

/// Eigenvalues of an arbitrary real 2×2 matrix.
pub fn eigen_2x2(m: [[f64; 2]; 2]) -> EigenPair {
    let [[a, b], [c, d]] = m;
    eigen_from_invariants(a + d, a * d - b * c, (a - d) * (a - d) + 4.0 * b * c)
}

/// `λ±(|ξ|)` for the given viscosities.
pub fn eigenvalues(xi_norm: f64, visc: &Viscosities) -> Result<EigenPair> {
    visc.validate_allow_zero_chi()?;
    let m = SymbolMatrix::new(xi_norm, *visc)?;
    Ok(eigen_from_invariants(m.trace(), m.determinant(), m.discriminant()))
}

/// One line of the `linear-spectrum` table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub xi: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `λ− / (ν|ξ|²)`, tends to 1 as `|ξ| → 0`.
    pub ratio_lowfreq: f64,
    /// `λ+λ− / (χ̄μ|ξ|⁴)`, tends to 1 as `|ξ| → ∞`.
    pub ratio_highfreq: f64,
}

pub fn spectrum_row(xi: f64, visc: &Viscosities) -> Result<SpectrumRow> {
    let e = eigenvalues(xi, visc)?;
    let x2 = xi * xi;
    Ok(SpectrumRow {
        xi,
        lambda_plus: e.lambda_plus,
        lambda_minus: e.lambda_minus,
        ratio_lowfreq: e.lambda_minus / (visc.nu * x2),
        ratio_highfreq: e.lambda_plus * e.lambda_minus / (visc.chi_bar() * visc.mu * x2 * x2),
    })
}

pub fn write_spectrum_csv<W: std::io::Write>(rows: &[SpectrumRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

/// `n` logarithmically spaced points from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n.max(2) - 1) as f64).exp())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsReport {
    pub rows: Vec<SpectrumRow>,
    /// `λ+ / 4χ` at the smallest `|ξ|`.
    pub low_plus_ratio: f64,
    /// `λ− / (ν|ξ|²)` at the smallest `|ξ|`.
    pub low_minus_ratio: f64,
    /// Log-log slope of `λ−` between the two smallest points.
    pub low_minus_slope: f64,
    /// `λ+λ− / (χ̄μ|ξ|⁴)` at the largest `|ξ|`.
    pub high_product_ratio: f64,
    /// `(λ+ + λ−) / ((χ̄+μ)|ξ|²)` at the largest `|ξ|`.
    pub high_sum_ratio: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Low- and high-frequency behaviour of `λ±` over a grid of `|ξ|` values
/// spanning at least four decades. Ratios are checked within 2 %.
pub fn asymptotics_report(visc: &Viscosities, xi_grid: &[f64]) -> Result<AsymptoticsReport> {
    let mut xs: Vec<f64> = xi_grid.to_vec();
    if xs.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidParameter("|ξ| grid must be positive and finite".into()));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 2 || (xs[xs.len() - 1] / xs[0]).log10() < 4.0 {
        return Err(Error::InvalidParameter("|ξ| grid must span at least four decades".into()));
    }
    let rows: Vec<SpectrumRow> = xs.iter().map(|&x| spectrum_row(x, visc)).collect::<Result<_>>()?;
    let lo = rows[0];
    let lo2 = rows[1];
    let hi = rows[rows.len() - 1];
    let low_plus_ratio = lo.lambda_plus / (4.0 * visc.chi);
    let low_minus_slope = (lo2.lambda_minus / lo.lambda_minus).ln() / (lo2.xi / lo.xi).ln();
    let high_sum_ratio = (hi.lambda_plus + hi.lambda_minus) / ((visc.chi_bar() + visc.mu) * hi.xi * hi.xi);
    let tolerance = 0.02;
    let near = |r: f64, target: f64| (r - target).abs() <= tolerance * target;
    let passed = near(low_plus_ratio, 1.0)
        && near(lo.ratio_lowfreq, 1.0)
        && near(low_minus_slope, 2.0)
        && near(hi.ratio_highfreq, 1.0)
        && near(high_sum_ratio, 1.0);
    Ok(AsymptoticsReport {
        low_plus_ratio,
        low_minus_ratio: lo.ratio_lowfreq,
        low_minus_slope,
        high_product_ratio: hi.ratio_highfreq,
        high_sum_ratio,
        tolerance,
        passed,
        rows,
    })
}

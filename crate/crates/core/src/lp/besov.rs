//! Homogeneous Besov norms on the lattice.
//!
//! ```text
//! ‖f‖_{Ḃ^s_{p,q}} = ‖ (2^{js} ‖Δ̇_j f‖_{L^p})_j ‖_{ℓ^q}
//! ```
//!
//! with `L^p` taken on the unit-mass measure of the box and the sum running
//! over the blocks selected by the [`Band`].

use serde::Serialize;

use super::field_like::FieldLike;
use super::partition::DyadicPartition;
use crate::error::{Error, Result};
use crate::par;
use crate::spectral::norms::check_exponent;

/// Which blocks enter a norm: all of them, `j ≤ j0` or `j > j0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Band {
    Full,
    Low(i32),
    High(i32),
}

impl Band {
    pub fn contains(&self, j: i32) -> bool {
        match *self {
            Band::Full => true,
            Band::Low(j0) => j <= j0,
            Band::High(j0) => j > j0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BesovSpec {
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub band: Band,
}

impl BesovSpec {
    pub fn new(s: f64, p: f64, q: f64) -> Self {
        Self {
            s,
            p,
            q,
            band: Band::Full,
        }
    }

    pub fn low(mut self, j0: i32) -> Self {
        self.band = Band::Low(j0);
        self
    }

    pub fn high(mut self, j0: i32) -> Self {
        self.band = Band::High(j0);
        self
    }

    pub fn cutoff_j0(&self) -> Option<i32> {
        match self.band {
            Band::Full => None,
            Band::Low(j) | Band::High(j) => Some(j),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return Err(Error::InvalidParameter(format!("regularity s = {}", self.s)));
        }
        check_exponent(self.p)?;
        check_exponent(self.q)
    }
}

/// One row of a per-block norm table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockRow {
    pub j: i32,
    #[serde(rename = "2^j")]
    pub two_j: f64,
    pub block_lp: f64,
    pub weighted: f64,
}

/// `ℓ^q` norm of a non-negative sequence (`q = ∞` gives the max).
pub fn lq_norm(values: &[f64], q: f64) -> f64 {
    let m = values.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    if q.is_infinite() || m == 0.0 {
        return m;
    }
    m * values.iter().map(|v| (v.abs() / m).powf(q)).sum::<f64>().powf(1.0 / q)
}

pub(crate) fn check_zero_mean<F: FieldLike>(f: &F) -> Result<()> {
    let mean = f.mean_norm();
    if mean > 1e-12 * f.max_abs() {
        return Err(Error::NonzeroMean(mean));
    }
    Ok(())
}

/// `‖Δ̇_j f‖_{L^p}` for every level in the partition range (zero for blocks
/// that miss the spectral support of `f`).
pub fn block_norms<F: FieldLike>(lp: &DyadicPartition, f: &F, p: f64) -> Result<Vec<(i32, f64)>> {
    check_exponent(p)?;
    if p == 2.0 {
        // Parseval on the shell spectrum
        let e = f.shell_energy();
        return Ok(lp
            .levels()
            .map(|j| {
                let s: f64 = e.iter().enumerate().map(|(k2, &v)| lp.weight_k2(j, k2).powi(2) * v).sum();
                (j, s.sqrt())
            })
            .collect());
    }
    let active = lp.active_levels(f);
    let levels: Vec<i32> = lp.levels().collect();
    let norms = par::map_collect(levels.len(), |i| {
        let j = levels[i];
        if !active.contains(&j) {
            return Ok(0.0);
        }
        lp.block(f, j)?.lp(p)
    });
    levels
        .into_iter()
        .zip(norms)
        .map(|(j, n)| n.map(|n| (j, n)))
        .collect()
}

/// Per-block table of `‖Δ̇_j f‖_{L^p}` and `2^{js}‖Δ̇_j f‖_{L^p}` restricted to the band.
pub fn besov_block_table<F: FieldLike>(f: &F, spec: &BesovSpec) -> Result<Vec<BlockRow>> {
    spec.validate()?;
    check_zero_mean(f)?;
    let lp = DyadicPartition::new(f.grid());
    Ok(block_norms(&lp, f, spec.p)?
        .into_iter()
        .filter(|(j, _)| spec.band.contains(*j))
        .map(|(j, b)| {
            let two_j = 2f64.powi(j);
            BlockRow {
                j,
                two_j,
                block_lp: b,
                weighted: two_j.powf(spec.s) * b,
            }
        })
        .collect())
}

/// `‖f‖_{Ḃ^s_{p,q}}` (restricted to the band of `spec`).
pub fn besov_norm<F: FieldLike>(f: &F, spec: &BesovSpec) -> Result<f64> {
    let rows = besov_block_table(f, spec)?;
    let w: Vec<f64> = rows.iter().map(|r| r.weighted).collect();
    Ok(lq_norm(&w, spec.q))
}

/// Writes a block table as CSV with columns `j, 2^j, block_Lp, weighted`.
pub fn write_block_table<W: std::io::Write>(rows: &[BlockRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "2^j", "block_Lp", "weighted"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.j.to_string(),
            r.two_j.to_string(),
            format!("{:e}", r.block_lp),
            format!("{:e}", r.weighted),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Splits `f` into `low = mean + Σ_{j≤j0} Δ̇_j f` and `high = f − low`.
pub fn frequency_split<F: FieldLike>(f: &F, j0: i32) -> (F, F) {
    let lp = DyadicPartition::new(f.grid());
    if j0 >= lp.j_max() {
        return (f.clone(), f.masked(|_| 0.0));
    }
    let low = f.masked(|i| lp.low_weight(j0, i));
    let high = f.masked(|i| 1.0 - lp.low_weight(j0, i));
    (low, high)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct InterpolationReport {
    pub sigma: f64,
    pub lhs: f64,
    pub norm_sigma1: f64,
    pub norm_sigma2: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
}

/// Checks `‖f‖_{Ḃ^{θσ₁+(1−θ)σ₂}_{p,q}} ≤ ‖f‖^θ_{Ḃ^{σ₁}_{p,q}} ‖f‖^{1−θ}_{Ḃ^{σ₂}_{p,q}}`,
/// which is Hölder's inequality on the block sequence.
pub fn interpolation_check<F: FieldLike>(
    f: &F,
    sigma1: f64,
    sigma2: f64,
    theta: f64,
    p: f64,
    q: f64,
) -> Result<InterpolationReport> {
    if sigma1 == sigma2 {
        return Err(Error::InvalidParameter("interpolation needs σ1 ≠ σ2".into()));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("θ = {theta} not in (0, 1)")));
    }
    let sigma = theta * sigma1 + (1.0 - theta) * sigma2;
    let lhs = besov_norm(f, &BesovSpec::new(sigma, p, q))?;
    let n1 = besov_norm(f, &BesovSpec::new(sigma1, p, q))?;
    let n2 = besov_norm(f, &BesovSpec::new(sigma2, p, q))?;
    let rhs = n1.powf(theta) * n2.powf(1.0 - theta);
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(InterpolationReport {
        sigma,
        lhs,
        norm_sigma1: n1,
        norm_sigma2: n2,
        rhs,
        ratio,
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}

/// `‖∇f‖_{L^p} / (2^j ‖f‖_{L^p})` for a scalar field, using the Euclidean
/// gradient magnitude.
pub fn bernstein_ratio(f: &crate::spectral::SpectralField, j: i32, p: f64) -> Result<f64> {
    let g = crate::spectral::gradient(f);
    let num = g.lp(p)?;
    let den = f.lp(p)? * 2f64.powi(j);
    if den == 0.0 {
        return Err(Error::Degenerate("Bernstein ratio of the zero field".into()));
    }
    Ok(num / den)
}

//! Equivalence of the Euclidean and `ℓ¹` Gevrey multipliers on dyadic blocks:
//!
//! ```text
//! ‖e^{c₁αΛ₁} f‖ ≤ K₁ ‖e^{αΛ} f‖      ‖e^{αΛ} f‖ ≤ K₂ ‖e^{c₂αΛ₁} f‖
//! ```
//!
//! `K₁`, `K₂` are measured as worst-case ratios over random block-supported
//! fields; `|ξ| ≤ |ξ|₁ ≤ √3|ξ|` makes `c₁ < 1/√3` and `c₂ > 1` sufficient mode
//! by mode.

use serde::Serialize;

use super::norm::{gevrey_weighted, Flavor};
use crate::error::Result;
use crate::lp::{DyadicPartition, FieldLike};
use crate::spectral::random::random_spectral;
use crate::spectral::{Grid3, SpectralField};

pub const EQUIV_C1: f64 = 0.9 / 1.732_050_807_568_877_2;
pub const EQUIV_C2: f64 = 1.1;
pub const EQUIV_BOUND: f64 = 10.0;

#[derive(Clone, Debug, Serialize)]
pub struct EquivRow {
    pub j: i32,
    pub alpha: f64,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivReport {
    pub c1: f64,
    pub c2: f64,
    pub p: f64,
    pub rows: Vec<EquivRow>,
    pub max_k1: f64,
    pub max_k2: f64,
    /// `max_j max(K,1) / min_j max(K,1)` at fixed `α`, worst over `α`.
    pub k1_spread: f64,
    pub k2_spread: f64,
    /// Largest scanned `c` needing no constant (`K₁ ≤ 1`) and smallest scanned
    /// `c` with `K₂ ≤ 1`.
    pub c1_workable: Option<f64>,
    pub c2_workable: Option<f64>,
    pub passed: bool,
}

fn block_field(grid: Grid3, lp: &DyadicPartition, j: i32, seed: u64) -> Result<SpectralField> {
    let f = random_spectral(grid, seed, |_| 1.0, |i| lp.weight(j, i) > 0.0);
    lp.block(&f, j)
}

/// `(K₁, K₂)` for one block level and `α` over `fields`.
fn constants(fields: &[SpectralField], alpha: f64, c1: f64, c2: f64, p: f64) -> Result<(f64, f64)> {
    let mut k1 = 0.0_f64;
    let mut k2 = 0.0_f64;
    for f in fields {
        let e = gevrey_weighted(f, alpha, Flavor::Euclid)?.lp(p)?;
        let a = gevrey_weighted(f, c1 * alpha, Flavor::L1)?.lp(p)?;
        let b = gevrey_weighted(f, c2 * alpha, Flavor::L1)?.lp(p)?;
        k1 = k1.max(a / e);
        k2 = k2.max(e / b);
    }
    Ok((k1, k2))
}

fn spread(rows: &[EquivRow], alphas: &[f64], pick: impl Fn(&EquivRow) -> f64) -> f64 {
    alphas
        .iter()
        .map(|&a| {
            let v: Vec<f64> = rows.iter().filter(|r| r.alpha == a).map(|r| pick(r).max(1.0)).collect();
            let hi = v.iter().cloned().fold(1.0, f64::max);
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            hi / lo
        })
        .fold(1.0, f64::max)
}

#[allow(clippy::too_many_arguments)]
pub fn multiplier_equiv_check(
    grid: Grid3,
    alphas: &[f64],
    blocks: &[i32],
    trials: usize,
    c1: f64,
    c2: f64,
    p: f64,
    seed: u64,
) -> Result<EquivReport> {
    let lp = DyadicPartition::new(grid);
    let mut rows = Vec::new();
    let mut per_block = Vec::new();
    for &j in blocks {
        lp.check_level(j)?;
        let fields: Vec<SpectralField> = (0..trials as u64)
            .map(|t| block_field(grid, &lp, j, seed.wrapping_add(1000 * t).wrapping_add(j as u64)))
            .collect::<Result<_>>()?;
        for &alpha in alphas {
            let (k1, k2) = constants(&fields, alpha, c1, c2, p)?;
            rows.push(EquivRow { j, alpha, k1, k2 });
        }
        per_block.push(fields);
    }
    let max_k1 = rows.iter().map(|r| r.k1).fold(0.0, f64::max);
    let max_k2 = rows.iter().map(|r| r.k2).fold(0.0, f64::max);
    let k1_spread = spread(&rows, alphas, |r| r.k1);
    let k2_spread = spread(&rows, alphas, |r| r.k2);

    // scan of workable constants on the largest α
    let alpha = alphas.iter().cloned().fold(0.0, f64::max);
    let scan: Vec<f64> = (1..=30).map(|i| 0.05 * i as f64).collect();
    let mut c1_workable = None;
    let mut c2_workable = None;
    if alpha > 0.0 {
        for &c in &scan {
            let mut k1 = 0.0_f64;
            let mut k2 = 0.0_f64;
            for fields in &per_block {
                let (a, b) = constants(fields, alpha, c, c, p)?;
                k1 = k1.max(a);
                k2 = k2.max(b);
            }
            if k1 <= 1.0 + 1e-12 {
                c1_workable = Some(c);
            }
            if k2 <= 1.0 + 1e-12 && c2_workable.is_none() {
                c2_workable = Some(c);
            }
        }
    }
    let passed = max_k1 <= EQUIV_BOUND && max_k2 <= EQUIV_BOUND && k1_spread <= 2.0 && k2_spread <= 2.0;
    Ok(EquivReport {
        c1,
        c2,
        p,
        rows,
        max_k1,
        max_k2,
        k1_spread,
        k2_spread,
        c1_workable,
        c2_workable,
        passed,
    })
}

//! Bony paraproduct decomposition `ab = T_a b + R(a, b) + T_b a` with
//!
//! ```text
//! T_a b   = Σ_j Ṡ_{j−1} a · Δ̇_j b
//! R(a, b) = Σ_{|j−j'| ≤ 1} Δ̇_{j'} a · Δ̇_j b
//! ```
//!
//! where `Ṡ_{j−1} = Σ_{j' ≤ j−2} Δ̇_{j'}`. Every product is formed on the
//! collocation grid and truncated to the two-thirds band, which is exact for
//! band-limited factors.

use super::besov::check_zero_mean;
use super::partition::DyadicPartition;
use crate::error::{Error, Result};
use crate::spectral::SpectralField;

#[derive(Clone, Debug)]
pub struct BonyParts {
    pub t_ab: SpectralField,
    pub r_ab: SpectralField,
    pub t_ba: SpectralField,
}

impl BonyParts {
    pub fn sum(&self) -> SpectralField {
        self.t_ab.axpy(1.0, &self.r_ab).axpy(1.0, &self.t_ba)
    }
}

fn check_band(f: &SpectralField) -> Result<()> {
    let g = f.grid;
    let tol = 1e-14 * f.max_abs();
    let leaked = (0..g.len()).any(|i| !g.in_dealiased_band(i) && f.coeffs[i].norm() > tol);
    if leaked {
        return Err(Error::Aliasing);
    }
    Ok(())
}

fn product_into(acc: &mut [f64], a: &[f64], b: &[f64]) {
    for ((o, x), y) in acc.iter_mut().zip(a).zip(b) {
        *o += x * y;
    }
}

fn truncate(grid: crate::spectral::Grid3, samples: &[f64]) -> Result<SpectralField> {
    let mut f = SpectralField::from_physical(grid, samples)?;
    f.dealias();
    Ok(f)
}

/// Alias-free product of two fields limited to the two-thirds band.
pub fn dealiased_product(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    check_band(a)?;
    check_band(b)?;
    let pa = a.to_physical();
    let pb = b.to_physical();
    let prod: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    truncate(a.grid, &prod)
}

/// Splits `ab` into its two paraproducts and remainder.
pub fn bony_decompose(a: &SpectralField, b: &SpectralField) -> Result<BonyParts> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    check_zero_mean(a)?;
    check_zero_mean(b)?;
    check_band(a)?;
    check_band(b)?;
    let grid = a.grid;
    let lp = DyadicPartition::new(grid);
    let levels: Vec<i32> = lp.levels().collect();
    let phys = |f: &SpectralField, j: i32| -> Result<Vec<f64>> { Ok(lp.block(f, j)?.to_physical()) };
    let da: Vec<Vec<f64>> = levels.iter().map(|&j| phys(a, j)).collect::<Result<_>>()?;
    let db: Vec<Vec<f64>> = levels.iter().map(|&j| phys(b, j)).collect::<Result<_>>()?;

    let n = grid.len();
    let mut t_ab = vec![0.0; n];
    let mut r_ab = vec![0.0; n];
    let mut t_ba = vec![0.0; n];
    // running low parts S_{j−1} a and S_{j−1} b
    let mut sa = vec![0.0; n];
    let mut sb = vec![0.0; n];
    for k in 0..levels.len() {
        // S_{j−1} = Σ_{j' ≤ j−2}: add block k−2 before using level k
        if k >= 2 {
            for (s, v) in sa.iter_mut().zip(&da[k - 2]) {
                *s += v;
            }
            for (s, v) in sb.iter_mut().zip(&db[k - 2]) {
                *s += v;
            }
        }
        product_into(&mut t_ab, &sa, &db[k]);
        product_into(&mut t_ba, &sb, &da[k]);
        for kp in k.saturating_sub(1)..(k + 2).min(levels.len()) {
            product_into(&mut r_ab, &da[kp], &db[k]);
        }
    }
    Ok(BonyParts {
        t_ab: truncate(grid, &t_ab)?,
        r_ab: truncate(grid, &r_ab)?,
        t_ba: truncate(grid, &t_ba)?,
    })
}

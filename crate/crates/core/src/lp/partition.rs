//! Discrete Littlewood-Paley partition.
//!
//! The radial profiles are
//!
//! ```text
//! h(x)  = exp(−1/x) for x > 0, 0 otherwise
//! S(x)  = h(x) / (h(x) + h(1 − x))
//! χ(r)  = 1 for r ≤ 3/4,  0 for r ≥ 4/3,  S((4/3 − r)/(7/12)) in between
//! φ(r)  = χ(r/2) − χ(r)
//! ```
//!
//! so `φ` is supported in `3/4 ≤ |ξ| ≤ 8/3`, `χ` in `|ξ| ≤ 4/3`, both take
//! values in `[0, 1]`, and `χ(ξ) + Σ_{j≥0} φ(2^{−j}ξ) = 1`.
//!
//! The valid block range covers the whole lattice: `j_min` is the largest
//! level whose `χ(2^{−j}·)` vanishes on every nonzero lattice mode and `j_max`
//! the smallest level with `Σ_{j≤j_max} φ_j = 1` up to the lattice corner.

use super::field_like::FieldLike;
use crate::error::{Error, Result};
use crate::spectral::Grid3;

const CHI_INNER: f64 = 0.75;
const CHI_OUTER: f64 = 4.0 / 3.0;

fn h(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        h(x) / (h(x) + h(1.0 - x))
    }
}

/// Low-pass profile `χ(r)` at radius `r = |ξ|`.
pub fn chi(r: f64) -> f64 {
    if r <= CHI_INNER {
        1.0
    } else if r >= CHI_OUTER {
        0.0
    } else {
        smooth_step((CHI_OUTER - r) / (CHI_OUTER - CHI_INNER))
    }
}

/// Annulus profile `φ(r) = χ(r/2) − χ(r)`.
pub fn phi(r: f64) -> f64 {
    chi(0.5 * r) - chi(r)
}

/// Derivative of `φ` by central difference (used by the symbol checks).
pub fn phi_prime(r: f64) -> f64 {
    let h = 1e-6;
    (phi(r + h) - phi(r - h)) / (2.0 * h)
}

#[derive(Clone, Debug)]
pub struct DyadicPartition {
    grid: Grid3,
    j_min: i32,
    j_max: i32,
    /// `weights[j − j_min][|k|²] = φ(2^{−j}|ξ|)`.
    weights: Vec<Vec<f64>>,
}

impl DyadicPartition {
    pub fn new(grid: Grid3) -> Self {
        let xi_min = grid.dk();
        let xi_cap = grid.xi2_of_k2(grid.max_k2()).sqrt();

        // largest j with (4/3)·2^j ≤ ξ_min
        let mut j_min = (xi_min / CHI_OUTER).log2().floor() as i32;
        while CHI_OUTER * 2f64.powi(j_min + 1) <= xi_min {
            j_min += 1;
        }
        while CHI_OUTER * 2f64.powi(j_min) > xi_min {
            j_min -= 1;
        }
        // smallest J with (3/4)·2^{J+1} ≥ ξ_cap
        let mut j_max = (xi_cap / CHI_INNER).log2().ceil() as i32 - 1;
        while CHI_INNER * 2f64.powi(j_max) >= xi_cap {
            j_max -= 1;
        }
        while CHI_INNER * 2f64.powi(j_max + 1) < xi_cap {
            j_max += 1;
        }

        let weights = (j_min..=j_max)
            .map(|j| {
                let scale = 2f64.powi(-j);
                (0..=grid.max_k2())
                    .map(|k2| {
                        if k2 == 0 {
                            0.0
                        } else {
                            phi(scale * grid.xi2_of_k2(k2).sqrt())
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            grid,
            j_min,
            j_max,
            weights,
        }
    }

    pub fn grid(&self) -> Grid3 {
        self.grid
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<i32> {
        self.j_min..=self.j_max
    }

    pub fn check_level(&self, j: i32) -> Result<()> {
        if j < self.j_min || j > self.j_max {
            return Err(Error::BlockOutOfRange {
                j,
                min: self.j_min,
                max: self.j_max,
            });
        }
        Ok(())
    }

    /// `φ(2^{−j}ξ)` at flat index `idx` (0 outside the valid range).
    #[inline]
    pub fn weight(&self, j: i32, idx: usize) -> f64 {
        if j < self.j_min || j > self.j_max {
            return 0.0;
        }
        self.weights[(j - self.j_min) as usize][self.grid.k2(idx)]
    }

    /// `φ(2^{−j}ξ)` on the shell `|k|² = k2`.
    #[inline]
    pub fn weight_k2(&self, j: i32, k2: usize) -> f64 {
        if j < self.j_min || j > self.j_max {
            return 0.0;
        }
        self.weights[(j - self.j_min) as usize][k2]
    }

    /// `Σ_{j ≤ j0} φ_j` on the shell `|k|² = k2` (1 on the mean mode).
    pub fn low_weight_k2(&self, j0: i32, k2: usize) -> f64 {
        if k2 == 0 {
            return 1.0;
        }
        let top = j0.min(self.j_max);
        (self.j_min..=top).map(|j| self.weight_k2(j, k2)).sum()
    }

    /// `Σ_{j ≤ j0} φ_j` at `idx`, with the mean mode counted as low frequency.
    pub fn low_weight(&self, j0: i32, idx: usize) -> f64 {
        if idx == 0 {
            return 1.0;
        }
        let top = j0.min(self.j_max);
        (self.j_min..=top).map(|j| self.weight(j, idx)).sum()
    }

    /// Levels whose annulus meets the spectral support of `f`.
    pub fn active_levels<F: FieldLike>(&self, f: &F) -> Vec<i32> {
        let mut present = vec![false; self.grid.max_k2() + 1];
        f.for_each_nonzero(|idx| present[self.grid.k2(idx)] = true);
        self.levels()
            .filter(|&j| {
                let w = &self.weights[(j - self.j_min) as usize];
                present.iter().zip(w).any(|(&p, &v)| p && v > 0.0)
            })
            .collect()
    }

    /// `Δ̇_j f = φ(2^{−j}D) f`.
    pub fn block<F: FieldLike>(&self, f: &F, j: i32) -> Result<F> {
        self.check_level(j)?;
        Ok(f.masked(|idx| self.weight(j, idx)))
    }

    /// `Ṡ_k f = χ(2^{−k}D) f`, which equals `mean + Σ_{j ≤ k−1} Δ̇_j f` on the lattice.
    pub fn low_pass<F: FieldLike>(&self, f: &F, k: i32) -> F {
        let grid = self.grid;
        let scale = 2f64.powi(-k);
        f.masked(|idx| chi(scale * grid.xi_norm(idx)))
    }
}

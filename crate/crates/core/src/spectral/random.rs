//! Seeded random fields for tests, verification suites and experiments.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_chacha::ChaCha8Rng;

use super::field::{SpectralField, VectorField};
use super::grid::Grid3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real white-noise samples in `[−1, 1)`, transformed.
pub fn random_scalar(grid: Grid3, seed: u64) -> SpectralField {
    let mut r = rng(seed);
    let samples: Vec<f64> = (0..grid.len()).map(|_| r.gen_range(-1.0..1.0)).collect();
    SpectralField::from_physical(grid, &samples).expect("finite samples")
}

pub fn random_vector(grid: Grid3, seed: u64) -> VectorField {
    VectorField::new([
        random_scalar(grid, seed.wrapping_mul(3)),
        random_scalar(grid, seed.wrapping_mul(3).wrapping_add(1)),
        random_scalar(grid, seed.wrapping_mul(3).wrapping_add(2)),
    ])
    .expect("same grid")
}

/// Real random field whose coefficients are `envelope(|ξ|)·(gaussian + i·gaussian)`
/// on modes accepted by `keep`, zero elsewhere. The zero mode is always dropped.
pub fn random_spectral<E, K>(grid: Grid3, seed: u64, envelope: E, keep: K) -> SpectralField
where
    E: Fn(f64) -> f64,
    K: Fn(usize) -> bool,
{
    let mut r = rng(seed);
    let mut f = SpectralField::zeros(grid);
    for idx in 1..grid.len() {
        let p = grid.partner(idx);
        if p < idx || grid.is_nyquist(idx) || !keep(idx) {
            continue;
        }
        let a = envelope(grid.xi_norm(idx));
        let c = Complex64::new(gauss(&mut r), gauss(&mut r)) * a;
        if p == idx {
            f.coeffs[idx] = Complex64::new(c.re, 0.0);
        } else {
            f.coeffs[idx] = c;
            f.coeffs[p] = c.conj();
        }
    }
    f
}

pub fn random_spectral_vector<E, K>(grid: Grid3, seed: u64, envelope: E, keep: K) -> VectorField
where
    E: Fn(f64) -> f64 + Copy,
    K: Fn(usize) -> bool + Copy,
{
    VectorField::new([
        random_spectral(grid, seed.wrapping_mul(3), envelope, keep),
        random_spectral(grid, seed.wrapping_mul(3).wrapping_add(1), envelope, keep),
        random_spectral(grid, seed.wrapping_mul(3).wrapping_add(2), envelope, keep),
    ])
    .expect("same grid")
}

pub fn gauss<R: Rng>(r: &mut R) -> f64 {
    r.sample(StandardNormal)
}

//! Conversions between physical samples and spectral fields, including the
//! two-for-one trick that transforms a pair of real fields with a single
//! complex FFT.

use num_complex::Complex64;

use super::fft::{fft3, Direction};
use super::field::{SpectralField, VectorField};
use super::grid::Grid3;
use crate::error::{Error, Result};
use crate::par;

/// Physical samples of every component of a vector field.
pub fn vector_to_physical(v: &VectorField) -> [Vec<f64>; 3] {
    let (a, b) = pair_to_physical(&v.comps[0], &v.comps[1]);
    [a, b, v.comps[2].to_physical()]
}

pub fn vector_from_physical(grid: Grid3, samples: [&[f64]; 3]) -> Result<VectorField> {
    let (a, b) = pair_from_physical(grid, samples[0], samples[1])?;
    let c = SpectralField::from_physical(grid, samples[2])?;
    VectorField::new([a, b, c])
}

/// Inverse-transforms two real fields with one complex FFT of `A + iB`.
pub fn pair_to_physical(a: &SpectralField, b: &SpectralField) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.grid, b.grid, "pair_to_physical: grid mismatch");
    let grid = a.grid;
    let i = Complex64::new(0.0, 1.0);
    let mut data = vec![Complex64::new(0.0, 0.0); grid.len()];
    par::fill_indexed(&mut data, |k| a.coeffs[k] + i * b.coeffs[k]);
    fft3(grid.n(), &mut data, Direction::Inverse);
    let re = data.iter().map(|c| c.re).collect();
    let im = data.iter().map(|c| c.im).collect();
    (re, im)
}

/// Forward-transforms two real sample arrays with one complex FFT and splits
/// the result using Hermitian symmetry.
pub fn pair_from_physical(grid: Grid3, a: &[f64], b: &[f64]) -> Result<(SpectralField, SpectralField)> {
    for s in [a, b] {
        if s.len() != grid.len() {
            return Err(Error::ShapeMismatch {
                expected: grid.len(),
                got: s.len(),
            });
        }
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("physical samples"));
        }
    }
    let mut data: Vec<Complex64> = a.iter().zip(b).map(|(&x, &y)| Complex64::new(x, y)).collect();
    fft3(grid.n(), &mut data, Direction::Forward);
    let mut fa = SpectralField::zeros(grid);
    let mut fb = SpectralField::zeros(grid);
    par::fill_indexed(&mut fa.coeffs, |k| {
        let h = data[k];
        let hp = data[grid.partner(k)].conj();
        (h + hp) * 0.5
    });
    par::fill_indexed(&mut fb.coeffs, |k| {
        let h = data[k];
        let hp = data[grid.partner(k)].conj();
        (h - hp) * Complex64::new(0.0, -0.5)
    });
    Ok((fa, fb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn constant_is_dc_delta() {
        let g = Grid3::unit(8).unwrap();
        let f = SpectralField::from_physical(g, &vec![1.0; g.len()]).unwrap();
        assert!((f.coeffs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(f.coeffs[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn cosine_splits_into_two_halves() {
        let g = Grid3::new(16, 3.0).unwrap();
        let l = g.length();
        let f = SpectralField::from_fn(g, |x| (2.0 * PI * x[0] / l).cos()).unwrap();
        for idx in 0..g.len() {
            let k = g.mode(idx);
            let expect = if k == [1, 0, 0] || k == [-1, 0, 0] { 0.5 } else { 0.0 };
            assert!((f.coeffs[idx] - Complex64::new(expect, 0.0)).norm() < 1e-14, "{k:?}");
        }
    }

    #[test]
    fn random_round_trip_and_parseval() {
        let g = Grid3::unit(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = SpectralField::from_physical(g, &x).unwrap();
        let back = f.to_physical();
        let err: f64 = x.iter().zip(&back).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let norm: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        assert!(err <= 1e-12 * norm);
        let ms = x.iter().map(|a| a * a).sum::<f64>() / g.len() as f64;
        assert!((f.energy() - ms).abs() <= 1e-12 * ms);
    }

    #[test]
    fn pair_transforms_agree_with_single() {
        let g = Grid3::unit(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (fx, fy) = pair_from_physical(g, &x, &y).unwrap();
        let sx = SpectralField::from_physical(g, &x).unwrap();
        let sy = SpectralField::from_physical(g, &y).unwrap();
        for i in 0..g.len() {
            assert!((fx.coeffs[i] - sx.coeffs[i]).norm() < 1e-14);
            assert!((fy.coeffs[i] - sy.coeffs[i]).norm() < 1e-14);
        }
        let (bx, by) = pair_to_physical(&fx, &fy);
        for i in 0..g.len() {
            assert!((bx[i] - x[i]).abs() < 1e-13 && (by[i] - y[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let g = Grid3::unit(8).unwrap();
        let mut x = vec![0.0; g.len()];
        x[5] = f64::NAN;
        assert!(matches!(
            SpectralField::from_physical(g, &x),
            Err(Error::NonFinite(_))
        ));
    }
}

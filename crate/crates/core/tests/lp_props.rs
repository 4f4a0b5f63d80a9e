mod common;

use common::{dft3, C64};
use micropolar::lp::{besov_norm, bony_decompose, chi, phi, BesovSpec, DyadicPartition, FieldLike};
use micropolar::spectral::random::random_scalar;
use micropolar::spectral::{Grid3, SpectralField};
use micropolar::Complex64;
use proptest::prelude::*;

fn grid(n: usize) -> Grid3 {
    Grid3::new(n, 2.0 * std::f64::consts::PI).unwrap()
}

fn band_limited(g: Grid3, seed: u64) -> SpectralField {
    let mut f = random_scalar(g, seed);
    f.dealias();
    f.coeffs[0] = Complex64::new(0.0, 0.0);
    f
}

/// Product of two band-limited fields by direct synthesis and analysis.
fn reference_product(a: &SpectralField, b: &SpectralField) -> Vec<C64> {
    let n = a.grid.n();
    let synth = |f: &SpectralField| {
        let mut d = f.coeffs.clone();
        dft3(n, &mut d, false);
        d
    };
    let (pa, pb) = (synth(a), synth(b));
    let mut prod: Vec<C64> = pa.iter().zip(&pb).map(|(x, y)| C64::new(x.re * y.re, 0.0)).collect();
    dft3(n, &mut prod, true);
    for (i, c) in prod.iter_mut().enumerate() {
        if !a.grid.in_dealiased_band(i) {
            *c = C64::new(0.0, 0.0);
        }
    }
    prod
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profile_partition(r in 0.01f64..100.0) {
        // χ(r) + Σ_{j≥0} φ(2^{−j} r) = 1
        let mut s = chi(r);
        for j in 0..12 {
            s += phi(r / 2f64.powi(j));
        }
        prop_assert!((s - 1.0).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&phi(r)));
    }

    #[test]
    fn blocks_reconstruct_mean_free_part(seed in any::<u64>(), n in prop::sample::select(vec![8usize, 16])) {
        let g = grid(n);
        let f = random_scalar(g, seed);
        let lp = DyadicPartition::new(g);
        let mut sum = SpectralField::zeros(g);
        for j in lp.levels() {
            sum = sum.axpy(1.0, &lp.block(&f, j).unwrap());
        }
        prop_assert!(sum.coeffs[0].norm() == 0.0);
        for i in 1..g.len() {
            prop_assert!((sum.coeffs[i] - f.coeffs[i]).norm() <= 1e-13);
        }
    }

    #[test]
    fn bony_parts_sum_to_product(sa in any::<u64>(), sb in any::<u64>()) {
        let g = grid(16);
        let (a, b) = (band_limited(g, sa), band_limited(g, sb));
        let parts = bony_decompose(&a, &b).unwrap();
        let sum = parts.sum();
        let reference = reference_product(&a, &b);
        let scale = reference.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (x, y) in sum.coeffs.iter().zip(&reference) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn besov_norm_decreases_in_q(seed in any::<u64>(), s in -1.0f64..1.0, p in prop::sample::select(vec![1.0, 2.0, f64::INFINITY])) {
        let f = band_limited(grid(16), seed);
        let mut last = f64::INFINITY;
        for q in [1.0, 2.0, 4.0, f64::INFINITY] {
            let v = besov_norm(&f, &BesovSpec::new(s, p, q)).unwrap();
            prop_assert!(v <= last * (1.0 + 1e-12));
            last = v;
        }
    }

    #[test]
    fn shell_energy_is_parseval(seed in any::<u64>()) {
        let f = band_limited(grid(16), seed);
        let total: f64 = f.shell_energy().iter().sum();
        prop_assert!((total - f.energy()).abs() <= 1e-13 * f.energy());
    }
}

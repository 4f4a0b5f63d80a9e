use crate::error::Result;
use crate::spectral::{lp_norm, lp_norm_vector, Grid3, SpectralField, VectorField};

/// Operations shared by scalar and vector spectral fields so the dyadic
/// machinery can treat both.
pub trait FieldLike: Clone + Send + Sync {
    fn grid(&self) -> Grid3;
    /// `|f̂(0)|` (Euclidean over components).
    fn mean_norm(&self) -> f64;
    fn max_abs(&self) -> f64;
    /// Multiplies every mode by the real weight `w(idx)`.
    fn masked<W: Fn(usize) -> f64 + Sync + Send>(&self, w: W) -> Self;
    /// `L^p` norm of the pointwise magnitude.
    fn lp(&self, p: f64) -> Result<f64>;
    fn for_each_nonzero<G: FnMut(usize)>(&self, g: G);
    /// Largest coefficient magnitude over the modes at flat index `idx`.
    fn mode_abs(&self, idx: usize) -> f64;
    /// `Σ|f̂(k)|²` binned by `|k|²` (lattice units).
    fn shell_energy(&self) -> Vec<f64>;
}

fn bin_energy(grid: Grid3, fields: &[&SpectralField]) -> Vec<f64> {
    let mut e = vec![0.0; grid.max_k2() + 1];
    for f in fields {
        for (i, c) in f.coeffs.iter().enumerate() {
            let a = c.norm_sqr();
            if a != 0.0 {
                e[grid.k2(i)] += a;
            }
        }
    }
    e
}

impl FieldLike for SpectralField {
    fn grid(&self) -> Grid3 {
        self.grid
    }

    fn mean_norm(&self) -> f64 {
        self.mean().norm()
    }

    fn max_abs(&self) -> f64 {
        SpectralField::max_abs(self)
    }

    fn masked<W: Fn(usize) -> f64 + Sync + Send>(&self, w: W) -> Self {
        self.map_modes(|i| num_complex::Complex64::new(w(i), 0.0))
    }

    fn lp(&self, p: f64) -> Result<f64> {
        lp_norm(self, p)
    }

    fn for_each_nonzero<G: FnMut(usize)>(&self, mut g: G) {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                g(i);
            }
        }
    }

    fn mode_abs(&self, idx: usize) -> f64 {
        self.coeffs[idx].norm()
    }

    fn shell_energy(&self) -> Vec<f64> {
        bin_energy(self.grid, &[self])
    }
}

impl FieldLike for VectorField {
    fn grid(&self) -> Grid3 {
        VectorField::grid(self)
    }

    fn mean_norm(&self) -> f64 {
        VectorField::mean_norm(self)
    }

    fn max_abs(&self) -> f64 {
        VectorField::max_abs(self)
    }

    fn masked<W: Fn(usize) -> f64 + Sync + Send>(&self, w: W) -> Self {
        self.map_components(|c| c.masked(&w))
    }

    fn lp(&self, p: f64) -> Result<f64> {
        lp_norm_vector(self, p)
    }

    fn for_each_nonzero<G: FnMut(usize)>(&self, mut g: G) {
        let n = self.grid().len();
        for i in 0..n {
            if self.comps.iter().any(|c| c.coeffs[i].re != 0.0 || c.coeffs[i].im != 0.0) {
                g(i);
            }
        }
    }

    fn mode_abs(&self, idx: usize) -> f64 {
        self.comps.iter().map(|c| c.coeffs[idx].norm_sqr()).sum::<f64>().sqrt()
    }

    fn shell_energy(&self) -> Vec<f64> {
        bin_energy(self.grid(), &[&self.comps[0], &self.comps[1], &self.comps[2]])
    }
}

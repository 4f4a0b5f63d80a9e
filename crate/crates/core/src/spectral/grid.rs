use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-mode lookup tables shared by the hot loops.
#[derive(Debug)]
pub struct GridTables {
    pub xi: Vec<[f64; 3]>,
    pub k2: Vec<u32>,
    pub partner: Vec<u32>,
    pub dealiased: Vec<bool>,
}

/// Uniform periodic grid on `[0, L)³` with `n` points per axis.
///
/// Spectral storage uses FFT order along every axis: storage index `i` holds
/// integer mode `i` for `i < n/2` and `i − n` otherwise, so the lattice is
/// `{−n/2, …, n/2 − 1}³`. Flat indices are row-major with axis 0 slowest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid3 {
    n: usize,
    length: f64,
}

impl Grid3 {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_per_axis must be a power of two >= 8, got {n}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "domain length must be positive, got {length}"
            )));
        }
        Ok(Self { n, length })
    }

    /// `n = 2π` box, the most common test configuration.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of lattice points, `n³`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Wavenumber spacing `2π/L`.
    #[inline]
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        // n is a power of two
        let s = self.n.trailing_zeros();
        let m = self.n - 1;
        [idx >> (2 * s), (idx >> s) & m, idx & m]
    }

    #[inline]
    pub fn mode_of(&self, storage: usize) -> i64 {
        if storage < self.n / 2 {
            storage as i64
        } else {
            storage as i64 - self.n as i64
        }
    }

    #[inline]
    pub fn storage_of(&self, mode: i64) -> usize {
        mode.rem_euclid(self.n as i64) as usize
    }

    /// Integer mode vector of a flat index.
    #[inline]
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let [a, b, c] = self.unflatten(idx);
        [self.mode_of(a), self.mode_of(b), self.mode_of(c)]
    }

    /// Flat index of an integer mode vector (taken modulo `n`).
    #[inline]
    pub fn index_of_mode(&self, k: [i64; 3]) -> usize {
        self.index(self.storage_of(k[0]), self.storage_of(k[1]), self.storage_of(k[2]))
    }

    /// Physical wavevector `ξ = (2π/L)·k`.
    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let k = self.mode(idx);
        let dk = self.dk();
        [k[0] as f64 * dk, k[1] as f64 * dk, k[2] as f64 * dk]
    }

    /// Integer `|k|²`, useful as a key into radial tables.
    #[inline]
    pub fn k2(&self, idx: usize) -> usize {
        let k = self.mode(idx);
        (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as usize
    }

    /// Largest `|k|²` on the lattice.
    pub fn max_k2(&self) -> usize {
        3 * (self.n / 2) * (self.n / 2)
    }

    /// `|ξ|²` for integer `|k|²`.
    #[inline]
    pub fn xi2_of_k2(&self, k2: usize) -> f64 {
        let dk = self.dk();
        k2 as f64 * dk * dk
    }

    #[inline]
    pub fn xi_norm(&self, idx: usize) -> f64 {
        self.xi2_of_k2(self.k2(idx)).sqrt()
    }

    /// `|ξ|₁ = Σ|ξ_i|`.
    #[inline]
    pub fn xi_l1(&self, idx: usize) -> f64 {
        let k = self.mode(idx);
        (k[0].abs() + k[1].abs() + k[2].abs()) as f64 * self.dk()
    }

    /// Flat index of the mode `−k`.
    #[inline]
    pub fn partner(&self, idx: usize) -> usize {
        let n = self.n;
        let [a, b, c] = self.unflatten(idx);
        self.index((n - a) % n, (n - b) % n, (n - c) % n)
    }

    /// True when any component equals the Nyquist mode `−n/2`.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let h = self.n / 2;
        let [a, b, c] = self.unflatten(idx);
        a == h || b == h || c == h
    }

    /// Largest integer mode kept by the 2/3 rule.
    #[inline]
    pub fn dealias_cutoff(&self) -> i64 {
        ((self.n - 1) / 3) as i64
    }

    /// 2/3-rule mask: every component satisfies `3|k_i| < n`.
    #[inline]
    pub fn in_dealiased_band(&self, idx: usize) -> bool {
        let c = self.dealias_cutoff();
        let k = self.mode(idx);
        k.iter().all(|v| v.abs() <= c)
    }

    /// Physical coordinate of a collocation point.
    #[inline]
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let [a, b, c] = self.unflatten(idx);
        let h = self.length / self.n as f64;
        [a as f64 * h, b as f64 * h, c as f64 * h]
    }

    /// Cached per-mode tables (built once per distinct grid).
    pub fn tables(&self) -> Arc<GridTables> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<GridTables>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("grid table cache poisoned");
        guard
            .entry((self.n, self.length.to_bits()))
            .or_insert_with(|| {
                let n = self.len();
                Arc::new(GridTables {
                    xi: (0..n).map(|i| self.wavevector(i)).collect(),
                    k2: (0..n).map(|i| self.k2(i) as u32).collect(),
                    partner: (0..n).map(|i| self.partner(i) as u32).collect(),
                    dealiased: (0..n).map(|i| self.in_dealiased_band(i)).collect(),
                })
            })
            .clone()
    }

    /// Largest physical wavenumber magnitude per axis (Nyquist).
    pub fn nyquist_wavenumber(&self) -> f64 {
        (self.n / 2) as f64 * self.dk()
    }
}

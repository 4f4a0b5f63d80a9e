//! Three-dimensional FFTs built from 1D rustfft plans.
//!
//! Each pass transforms the contiguous (last) axis and then cyclically
//! rotates the axes `(a, b, c) → (c, a, b)`; three passes transform every axis
//! and restore the original layout.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::par;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> Arc<Plans> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Plans>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plans {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Physical samples to Fourier coefficients, normalized by `1/n³`.
    Forward,
    /// Fourier coefficients to physical samples (plain synthesis sum).
    Inverse,
}

/// In-place 3D transform of an `n³` row-major array.
pub fn fft3(n: usize, data: &mut [Complex64], dir: Direction) {
    assert_eq!(data.len(), n * n * n, "fft3: buffer length");
    let p = plans(n);
    let plan = match dir {
        Direction::Forward => p.forward.clone(),
        Direction::Inverse => p.inverse.clone(),
    };
    let mut rotated = vec![Complex64::new(0.0, 0.0); data.len()];
    let lines_per_task = (4096 / n).max(1) * n;
    let scratch_len = plan.get_inplace_scratch_len();
    let run_lines = |buf: &mut [Complex64]| {
        par::for_each_chunk_mut_init(
            buf,
            lines_per_task,
            || vec![Complex64::new(0.0, 0.0); scratch_len],
            |scratch, _, lines| plan.process_with_scratch(lines, scratch),
        );
    };
    run_lines(data);
    rotate_axes(n, data, &mut rotated);
    run_lines(&mut rotated);
    rotate_axes(n, &rotated, data);
    run_lines(data);
    rotate_axes(n, data, &mut rotated);
    if dir == Direction::Forward {
        let scale = 1.0 / (n * n * n) as f64;
        par::for_each_chunk_mut(data, par::REDUCE_CHUNK, |start, c| {
            for (i, v) in c.iter_mut().enumerate() {
                *v = rotated[start + i] * scale;
            }
        });
    } else {
        data.copy_from_slice(&rotated);
    }
}

const TILE: usize = 16;

/// `out[c][a][b] = input[a][b][c]`, tiled for cache locality.
fn rotate_axes(n: usize, input: &[Complex64], out: &mut [Complex64]) {
    let plane = n * n;
    let t = TILE.min(n);
    par::for_each_chunk_mut(out, plane * t, |start, chunk| {
        let c0 = start / plane;
        for ab0 in (0..plane).step_by(t) {
            for ab in ab0..ab0 + t {
                let row = &input[ab * n + c0..ab * n + c0 + t];
                for (dc, v) in row.iter().enumerate() {
                    chunk[dc * plane + ab] = *v;
                }
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_forward(n: usize, data: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
        for (o, ov) in out.iter_mut().enumerate() {
            let (ka, kb, kc) = (o / (n * n), (o / n) % n, o % n);
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, v) in data.iter().enumerate() {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                let phase = -2.0 * PI * ((ka * a + kb * b + kc * c) as f64) / n as f64;
                acc += v * Complex64::from_polar(1.0, phase);
            }
            *ov = acc / (n * n * n) as f64;
        }
        out
    }

    #[test]
    fn matches_naive_dft() {
        let n = 8;
        let data: Vec<Complex64> = (0..n * n * n)
            .map(|i| Complex64::new((i as f64 * 0.3).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let expected = naive_forward(n, &data);
        let mut got = data.clone();
        fft3(n, &mut got, Direction::Forward);
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
        fft3(n, &mut got, Direction::Inverse);
        for (a, b) in got.iter().zip(&data) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

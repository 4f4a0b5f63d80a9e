//! Execution helpers for mode-parallel loops.
//!
//! With the `parallel` feature these dispatch to rayon unless the process-wide
//! mode has been switched to [`ExecMode::Sequential`]. Reductions always use a
//! fixed chunking and combine partial results in chunk order, so the numeric
//! result does not depend on the thread count or on the mode.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used for deterministic reductions.
pub const REDUCE_CHUNK: usize = 4096;

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

pub fn set_mode(mode: ExecMode) {
    FORCE_SEQUENTIAL.store(mode == ExecMode::Sequential, Ordering::Relaxed);
}

pub fn mode() -> ExecMode {
    if cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed) {
        ExecMode::Parallel
    } else {
        ExecMode::Sequential
    }
}

/// Applies `f(index_of_first_element, chunk)` to consecutive chunks of `data`.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == ExecMode::Parallel {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(c, s)| f(c * chunk, s));
        return;
    }
    data.chunks_mut(chunk)
        .enumerate()
        .for_each(|(c, s)| f(c * chunk, s));
}

/// Like [`for_each_chunk_mut`] but gives every worker a reusable scratch value.
pub fn for_each_chunk_mut_init<T, S, I, F>(data: &mut [T], chunk: usize, init: I, f: F)
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == ExecMode::Parallel {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each_init(&init, |s, (c, d)| f(s, c * chunk, d));
        return;
    }
    let mut scratch = init();
    data.chunks_mut(chunk)
        .enumerate()
        .for_each(|(c, d)| f(&mut scratch, c * chunk, d));
}

/// Fills `out[i] = f(i)`.
pub fn fill_indexed<T, F>(out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    for_each_chunk_mut(out, REDUCE_CHUNK, |start, chunk| {
        for (i, v) in chunk.iter_mut().enumerate() {
            *v = f(start + i);
        }
    });
}

/// Deterministic sum of `f(i)` for `i in 0..len`.
pub fn sum_indexed<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let partial = |c: usize| {
        let lo = c * REDUCE_CHUNK;
        let hi = (lo + REDUCE_CHUNK).min(len);
        (lo..hi).map(&f).sum::<f64>()
    };
    let chunks = len.div_ceil(REDUCE_CHUNK);
    map_collect(chunks, partial).into_iter().sum()
}

/// Deterministic maximum of `f(i)` (returns 0 for empty ranges).
pub fn max_indexed<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let partial = |c: usize| {
        let lo = c * REDUCE_CHUNK;
        let hi = (lo + REDUCE_CHUNK).min(len);
        (lo..hi).map(&f).fold(0.0_f64, f64::max)
    };
    let chunks = len.div_ceil(REDUCE_CHUNK);
    map_collect(chunks, partial).into_iter().fold(0.0, f64::max)
}

/// Evaluates `f(i)` for `i in 0..len` and collects the results in order.
pub fn map_collect<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == ExecMode::Parallel {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_do_not_depend_on_mode() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        set_mode(ExecMode::Parallel);
        let a = sum_indexed(100_003, f);
        set_mode(ExecMode::Sequential);
        let b = sum_indexed(100_003, f);
        set_mode(ExecMode::Parallel);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

//! Time-sampled norm series and Chemin-Lerner norms.
//!
//! ```text
//! ‖f‖_{L̃^ρ_T(Ḃ^s_{p,q})} = ‖ 2^{js} ‖Δ̇_j f‖_{L^ρ_T L^p} ‖_{ℓ^q}
//! ‖f‖_{L^ρ_T(Ḃ^s_{p,q})} = ‖ ‖f(t)‖_{Ḃ^s_{p,q}} ‖_{L^ρ_T}
//! ```
//!
//! Time integrals use the trapezoid rule on the sample times; `ρ = ∞` is a max.

use serde::Serialize;

use super::besov::{block_norms, check_zero_mean, csv_err, lq_norm, BesovSpec};
use super::field_like::FieldLike;
use super::partition::DyadicPartition;
use crate::error::{Error, Result};
use crate::spectral::norms::check_exponent;

/// Named non-negative quantities sampled at strictly increasing times.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NormSeries {
    pub times: Vec<f64>,
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl NormSeries {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let values = vec![Vec::new(); labels.len()];
        Self {
            times: Vec::new(),
            labels,
            values,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Appends one sample row, one value per label.
    pub fn push(&mut self, t: f64, row: &[f64]) -> Result<()> {
        if row.len() != self.labels.len() {
            return Err(Error::ShapeMismatch {
                expected: self.labels.len(),
                got: row.len(),
            });
        }
        if !t.is_finite() || self.times.last().is_some_and(|&last| t <= last) {
            return Err(Error::UnorderedTimes);
        }
        if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!("norm value {v} at t = {t}")));
        }
        self.times.push(t);
        for (col, &v) in self.values.iter_mut().zip(row) {
            col.push(v);
        }
        Ok(())
    }

    pub fn column(&self, label: &str) -> Option<&[f64]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values[i].as_slice())
    }

    /// CSV with a `t` column followed by one column per label.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (i, t) in self.times.iter().enumerate() {
            let mut rec = vec![format!("{t}")];
            rec.extend(self.values.iter().map(|c| format!("{:e}", c[i])));
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: times.len(),
        });
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::UnorderedTimes);
    }
    Ok(())
}

/// `(∫ |g|^ρ dt)^{1/ρ}` by the trapezoid rule (`max |g|` for `ρ = ∞`).
pub fn time_norm(times: &[f64], g: &[f64], rho: f64) -> Result<f64> {
    check_exponent(rho)?;
    check_times(times)?;
    if g.len() != times.len() {
        return Err(Error::ShapeMismatch {
            expected: times.len(),
            got: g.len(),
        });
    }
    if rho.is_infinite() {
        return Ok(g.iter().fold(0.0, |a, &b| a.max(b.abs())));
    }
    let m = g.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    if m == 0.0 {
        return Ok(0.0);
    }
    let integral: f64 = times
        .windows(2)
        .zip(g.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * ((v[0].abs() / m).powf(rho) + (v[1].abs() / m).powf(rho)))
        .sum();
    Ok(m * integral.powf(1.0 / rho))
}

fn block_series<F: FieldLike>(snapshots: &[(f64, F)], spec: &BesovSpec) -> Result<(Vec<f64>, Vec<i32>, Vec<Vec<f64>>)> {
    spec.validate()?;
    let times: Vec<f64> = snapshots.iter().map(|(t, _)| *t).collect();
    check_times(&times)?;
    let grid = snapshots[0].1.grid();
    if snapshots.iter().any(|(_, f)| f.grid() != grid) {
        return Err(Error::GridMismatch);
    }
    let lp = DyadicPartition::new(grid);
    let levels: Vec<i32> = lp.levels().filter(|j| spec.band.contains(*j)).collect();
    let mut per_time = Vec::with_capacity(snapshots.len());
    for (_, f) in snapshots {
        check_zero_mean(f)?;
        let b = block_norms(&lp, f, spec.p)?;
        per_time.push(
            b.into_iter()
                .filter(|(j, _)| spec.band.contains(*j))
                .map(|(_, v)| v)
                .collect::<Vec<_>>(),
        );
    }
    Ok((times, levels, per_time))
}

/// `‖f‖_{L̃^ρ_T(Ḃ^s_{p,q})}` over the sampled interval.
pub fn chemin_lerner_norm<F: FieldLike>(snapshots: &[(f64, F)], rho: f64, spec: &BesovSpec) -> Result<f64> {
    check_exponent(rho)?;
    let (times, levels, per_time) = block_series(snapshots, spec)?;
    let mut weighted = Vec::with_capacity(levels.len());
    for (i, &j) in levels.iter().enumerate() {
        let g: Vec<f64> = per_time.iter().map(|row| row[i]).collect();
        weighted.push(2f64.powi(j).powf(spec.s) * time_norm(&times, &g, rho)?);
    }
    Ok(lq_norm(&weighted, spec.q))
}

/// `‖f‖_{L^ρ_T(Ḃ^s_{p,q})}` over the sampled interval.
pub fn plain_time_besov_norm<F: FieldLike>(snapshots: &[(f64, F)], rho: f64, spec: &BesovSpec) -> Result<f64> {
    check_exponent(rho)?;
    let (times, levels, per_time) = block_series(snapshots, spec)?;
    let g: Vec<f64> = per_time
        .iter()
        .map(|row| {
            let w: Vec<f64> = levels
                .iter()
                .zip(row)
                .map(|(&j, &b)| 2f64.powi(j).powf(spec.s) * b)
                .collect();
            lq_norm(&w, spec.q)
        })
        .collect();
    time_norm(&times, &g, rho)
}

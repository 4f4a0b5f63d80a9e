use serde::Serialize;

use super::stepper::critical_besov_parts;
use crate::error::Result;
use crate::spectral::State;

/// Size of the data in the small-data norm
/// `𝒳₀,p = ‖(u₀,ω₀)‖^h_{Ḃ^{3/p−1}_{p,q}} + ‖(u₀,Λω₀)‖^ℓ_{Ḃ^{3/p−1}_{p,q}}`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmallnessReport {
    pub p: f64,
    pub q: f64,
    pub j0: i32,
    pub high_part: f64,
    pub low_part: f64,
    pub x0: f64,
    /// Largest `max|u|(t)/max|u|(0)` of an associated run, when known.
    pub max_growth: Option<f64>,
}

pub fn smallness_report(initial: &State, p: f64, q: f64, j0: i32) -> Result<SmallnessReport> {
    let (high_part, low_part) = critical_besov_parts(initial, p, q, j0)?;
    Ok(SmallnessReport {
        p,
        q,
        j0,
        high_part,
        low_part,
        x0: high_part + low_part,
        max_growth: None,
    })
}

//! Windowed decay experiments on random data with a prescribed low-frequency
//! slope.

use serde::Serialize;

use super::fit::{check_sigma, fit_power_law, predicted_exponent, DecayFit, Which};
use crate::error::{Error, Result};
use crate::lp::NormSeries;
use crate::solver::config::parse_times;
use crate::solver::{simulate_from, smallness_report, InitialData, KeyValues, NormRequest, RunConfig, SolverConfig};
use crate::spectral::{Grid3, Viscosities};

/// Fitted exponents faster than this count as faster than any tested power.
pub const HIGH_FREQUENCY_EXPONENT: f64 = -5.0;
pub const GAP_TARGET: f64 = 0.5;
pub const GAP_TOLERANCE: f64 = 0.1;
pub const R_DEPENDENCE_TOLERANCE: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub grid: Grid3,
    /// Time stepping, viscosities and the linear/nonlinear switch; snapshot
    /// times and norm requests are derived from the experiment.
    pub solver: SolverConfig,
    pub sigma: f64,
    pub amplitude: f64,
    /// Largest `|ξ|` carrying initial data (`None`: the dealiased band).
    pub band: Option<f64>,
    pub p: f64,
    /// Lebesgue exponents of the fitted norms. `r = 1` is fitted and reported
    /// without a prediction.
    pub r_values: Vec<f64>,
    pub derivative_orders: Vec<f64>,
    pub fit_window: (f64, f64),
    pub repetitions: usize,
    /// Number of geometric sample times covering `[t_a/2, t_b]`.
    pub samples: usize,
    pub tolerance_u: f64,
    pub tolerance_omega: f64,
    pub seed: u64,
}

impl ExperimentSpec {
    /// Unit viscosities `ν = χ = μ = κ = 1`.
    pub fn default_viscosities() -> Viscosities {
        Viscosities {
            nu: 1.0,
            chi: 1.0,
            mu: 1.0,
            kappa: 1.0,
        }
    }

    /// Exact linear evolution with unit viscosities and the standard
    /// tolerances (`±0.05` for `u`, `±0.08` for `ω`).
    pub fn linear(grid: Grid3, sigma: f64, fit_window: (f64, f64)) -> Self {
        let mut solver = SolverConfig::new(1.0, fit_window.1, Self::default_viscosities());
        solver.nonlinear = false;
        solver.retain_snapshots = false;
        Self {
            grid,
            solver,
            sigma,
            amplitude: 1.0,
            band: None,
            p: 2.0,
            r_values: vec![2.0],
            derivative_orders: vec![0.0],
            fit_window,
            repetitions: 5,
            samples: 32,
            tolerance_u: 0.05,
            tolerance_omega: 0.08,
            seed: 0,
        }
    }

    /// Full nonlinear evolution with `±0.15` tolerances.
    pub fn nonlinear(grid: Grid3, sigma: f64, fit_window: (f64, f64), dt: f64, amplitude: f64) -> Self {
        let mut s = Self::linear(grid, sigma, fit_window);
        s.solver.nonlinear = true;
        s.solver.dt = dt;
        s.amplitude = amplitude;
        s.tolerance_u = 0.15;
        s.tolerance_omega = 0.15;
        s
    }

    /// Builds a spec from a run file; `experiment.*` keys carry the
    /// experiment settings and `init.*` must describe `random_slope` data.
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let run = RunConfig::from_key_values(kv)?;
        let (sigma, amplitude, band) = match run.init {
            InitialData::RandomSlope { sigma, amplitude, band } => (sigma, amplitude, band),
            _ => return Err(Error::Config("decay experiments need init.kind = random_slope".into())),
        };
        let window = kv.get("experiment.window").unwrap_or("1:50");
        let (a, b) = window
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("experiment.window `{window}` is not a:b")))?;
        let fit_window = (parse_one("experiment.window", a)?, parse_one("experiment.window", b)?);
        let mut spec = if run.solver.nonlinear {
            Self::nonlinear(run.grid, sigma, fit_window, run.solver.dt, amplitude)
        } else {
            let mut s = Self::linear(run.grid, sigma, fit_window);
            s.amplitude = amplitude;
            s
        };
        spec.band = band;
        let d = Self::default_viscosities();
        spec.solver.visc = Viscosities {
            nu: kv.f64_or("visc.nu", d.nu)?,
            chi: kv.f64_or("visc.chi", d.chi)?,
            mu: kv.f64_or("visc.mu", d.mu)?,
            kappa: kv.f64_or("visc.kappa", d.kappa)?,
        };
        spec.solver.integrator = run.solver.integrator;
        spec.solver.besov = run.solver.besov;
        spec.seed = run.seed;
        spec.p = kv.f64_or("experiment.p", 2.0)?;
        spec.r_values = parse_times("experiment.r", kv.get("experiment.r").unwrap_or("2"))?;
        spec.derivative_orders = parse_times("experiment.l", kv.get("experiment.l").unwrap_or("0"))?;
        spec.repetitions = kv.i64_or("experiment.repetitions", 5)?.max(0) as usize;
        spec.samples = kv.i64_or("experiment.samples", 32)?.max(0) as usize;
        spec.tolerance_u = kv.f64_or("experiment.tol_u", spec.tolerance_u)?;
        spec.tolerance_omega = kv.f64_or("experiment.tol_omega", spec.tolerance_omega)?;
        spec.validate()?;
        Ok(spec)
    }

    /// `(L/2π)²/ν`: algebraic decay is only visible well before this time.
    pub fn horizon(&self) -> f64 {
        let k = self.grid.length() / (2.0 * std::f64::consts::PI);
        k * k / self.solver.visc.nu
    }

    pub fn shifted_window(&self) -> (f64, f64) {
        (0.5 * self.fit_window.0, 0.5 * self.fit_window.1)
    }

    pub fn sample_times(&self) -> Vec<f64> {
        let (a, b) = (self.shifted_window().0, self.fit_window.1);
        let n = self.samples;
        (0..n)
            .map(|i| (a.ln() + (b.ln() - a.ln()) * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    /// `(l, r, which)` entries with their predictions (`None` for `r = 1`).
    pub fn targets(&self) -> Result<Vec<(f64, f64, Which, Option<f64>)>> {
        let mut out = Vec::new();
        for &l in &self.derivative_orders {
            for &r in &self.r_values {
                for which in [Which::U, Which::Omega] {
                    let pred = if r < self.p && r == 1.0 {
                        None
                    } else {
                        Some(predicted_exponent(l, r, self.p, self.sigma, which)?)
                    };
                    out.push((l, r, which, pred));
                }
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        check_sigma(self.sigma, self.p)?;
        if self.derivative_orders.iter().any(|&l| !(l >= 0.0)) {
            return Err(Error::InvalidParameter("derivative orders must be ≥ 0".into()));
        }
        if self.r_values.is_empty() || self.derivative_orders.is_empty() {
            return Err(Error::InvalidParameter("need at least one r and one l".into()));
        }
        self.targets()?;
        let (a, b) = self.fit_window;
        if !(a > 0.0 && b > a) {
            return Err(Error::InvalidParameter(format!("fit window [{a}, {b}]")));
        }
        let limit = 0.5 * self.horizon();
        if b > limit {
            return Err(Error::InvalidParameter(format!(
                "fit window ends at {b}, beyond half the finite-box horizon ({limit:.3})"
            )));
        }
        if self.samples < 10 {
            return Err(Error::InvalidParameter(format!("need ≥ 10 samples, got {}", self.samples)));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidParameter("need at least one repetition".into()));
        }
        if !(self.amplitude >= 0.0) {
            return Err(Error::InvalidParameter(format!("amplitude {}", self.amplitude)));
        }
        Ok(())
    }

    fn solver_config(&self) -> SolverConfig {
        let mut c = self.solver.clone();
        c.t_end = self.fit_window.1;
        c.snapshot_times = self.sample_times();
        c.retain_snapshots = false;
        c.norm_requests = self
            .derivative_orders
            .iter()
            .flat_map(|&l| self.r_values.iter().map(move |&r| NormRequest { l, r }))
            .collect();
        c
    }
}

fn parse_one(key: &str, v: &str) -> Result<f64> {
    match parse_times(key, v)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Config(format!("{key}: `{v}` is not a number"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitRow {
    /// Column of the norm series that was fitted.
    pub quantity: String,
    pub which: Which,
    pub l: f64,
    pub r: f64,
    pub predicted: Option<f64>,
    /// Mean over repetitions.
    pub fitted: f64,
    /// Sample standard deviation over repetitions.
    pub spread: f64,
    /// Mean least-squares standard error.
    pub stderr: f64,
    /// Mean exponent over the window shifted down one octave.
    pub shifted: f64,
    pub transient_contaminated: bool,
    pub per_repetition: Vec<f64>,
    pub passed: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExperimentStatus {
    Completed,
    /// All-zero data: nothing to fit.
    Degenerate,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RDependence {
    pub r: f64,
    pub measured: f64,
    pub expected: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub status: ExperimentStatus,
    pub horizon: f64,
    pub fit_window: (f64, f64),
    pub repetitions: usize,
    pub rows: Vec<FitRow>,
    /// Low-frequency (`j ≤ j0`) parts, reported only.
    pub low_rows: Vec<FitRow>,
    pub high_rows: Vec<FitRow>,
    pub high_faster_than_power: bool,
    /// Fitted `ω` exponent minus fitted `u` exponent at `l = 0`, `r = p`.
    pub damping_gap: Option<f64>,
    pub gap_passed: Option<bool>,
    pub r_dependence: Vec<RDependence>,
    /// Labels of series that increase after `t = 1` in a linear run.
    pub monotonicity_violations: Vec<String>,
    /// Small-data norm of the first realisation.
    pub x0: f64,
    pub max_growth: f64,
    pub passed: bool,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn std_dev(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = mean(v);
    (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}

/// Fits that hit exact zeros are treated as faster than any power.
fn fit_or_vanished(series: &NormSeries, label: &str, window: (f64, f64)) -> Result<DecayFit> {
    match fit_power_law(series, label, window) {
        Err(Error::NonPositive { value, .. }) if value == 0.0 => Ok(DecayFit {
            exponent: f64::NEG_INFINITY,
            stderr: 0.0,
            window,
            n_points: 0,
        }),
        other => other,
    }
}

fn aggregate(
    spec: &ExperimentSpec,
    all: &[NormSeries],
    quantity: String,
    which: Which,
    l: f64,
    r: f64,
    predicted: Option<f64>,
    tol: Option<f64>,
) -> Result<FitRow> {
    let mut main = Vec::new();
    let mut shifted = Vec::new();
    let mut errs = Vec::new();
    for s in all {
        let f = fit_or_vanished(s, &quantity, spec.fit_window)?;
        main.push(f.exponent);
        errs.push(f.stderr);
        shifted.push(fit_or_vanished(s, &quantity, spec.shifted_window())?.exponent);
    }
    let fitted = mean(&main);
    let stderr = mean(&errs);
    let shifted_mean = mean(&shifted);
    let passed = match (predicted, tol) {
        (Some(p), Some(t)) => Some((fitted - p).abs() <= t),
        _ => None,
    };
    Ok(FitRow {
        quantity,
        which,
        l,
        r,
        predicted,
        fitted,
        spread: std_dev(&main),
        stderr,
        shifted: shifted_mean,
        transient_contaminated: fitted.is_finite() && (shifted_mean - fitted).abs() >= 3.0 * stderr,
        per_repetition: main,
        passed,
    })
}

fn nonincreasing_after(series: &NormSeries, label: &str, t0: f64) -> bool {
    let v = series.column(label).unwrap_or(&[]);
    let pts: Vec<f64> = series.times.iter().zip(v).filter(|(t, _)| **t >= t0).map(|(_, v)| *v).collect();
    pts.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
}

pub fn run_decay_experiment(spec: &ExperimentSpec) -> Result<DecayReport> {
    spec.validate()?;
    let config = spec.solver_config();
    let init = InitialData::RandomSlope {
        sigma: spec.sigma,
        amplitude: spec.amplitude,
        band: spec.band,
    };
    let mut degenerate = DecayReport {
        status: ExperimentStatus::Degenerate,
        horizon: spec.horizon(),
        fit_window: spec.fit_window,
        repetitions: spec.repetitions,
        rows: vec![],
        low_rows: vec![],
        high_rows: vec![],
        high_faster_than_power: false,
        damping_gap: None,
        gap_passed: None,
        r_dependence: vec![],
        monotonicity_violations: vec![],
        x0: 0.0,
        max_growth: 0.0,
        passed: false,
    };
    if spec.amplitude == 0.0 {
        return Ok(degenerate);
    }
    let mut series = Vec::with_capacity(spec.repetitions);
    let mut x0 = 0.0;
    let mut max_growth = 0.0_f64;
    let bes = config.besov;
    let j0 = bes.cutoff_j0().unwrap_or(0);
    for rep in 0..spec.repetitions {
        let initial = init.generate(spec.grid, spec.seed.wrapping_add(rep as u64))?;
        if rep == 0 {
            x0 = smallness_report(&initial, bes.p, bes.q, j0)?.x0;
        }
        let res = simulate_from(&initial, &config)?;
        max_growth = max_growth.max(res.max_growth);
        series.push(res.series);
    }
    if series.iter().all(|s| s.column("energy").is_some_and(|e| e.iter().all(|&v| v == 0.0))) {
        degenerate.x0 = x0;
        return Ok(degenerate);
    }

    let mut rows = Vec::new();
    for (l, r, which, pred) in spec.targets()? {
        let label = format!("{}_{}", which.prefix(), NormRequest { l, r }.suffix());
        let tol = match which {
            Which::U => spec.tolerance_u,
            Which::Omega => spec.tolerance_omega,
        };
        rows.push(aggregate(spec, &series, label, which, l, r, pred, Some(tol))?);
    }
    let base_u = predicted_exponent(0.0, 2.0, spec.p.min(2.0), spec.sigma, Which::U).ok();
    let base_w = predicted_exponent(0.0, 2.0, spec.p.min(2.0), spec.sigma, Which::Omega).ok();
    let mut low_rows = Vec::new();
    let mut high_rows = Vec::new();
    for (which, pred) in [(Which::U, base_u), (Which::Omega, base_w)] {
        let pre = which.prefix();
        low_rows.push(aggregate(spec, &series, format!("{pre}_low_l2"), which, 0.0, 2.0, pred, None)?);
        high_rows.push(aggregate(spec, &series, format!("{pre}_high_l2"), which, 0.0, 2.0, None, None)?);
    }
    let high_faster_than_power = high_rows
        .iter()
        .all(|r| r.per_repetition.iter().all(|&e| e < HIGH_FREQUENCY_EXPONENT));

    let find = |which: Which, l: f64, r: f64| rows.iter().find(|x| x.which == which && x.l == l && x.r == r);
    let (damping_gap, gap_passed) = match (find(Which::U, 0.0, spec.p), find(Which::Omega, 0.0, spec.p)) {
        (Some(u), Some(w)) => {
            let g = w.fitted - u.fitted;
            (Some(g), Some((g - GAP_TARGET).abs() <= GAP_TOLERANCE))
        }
        _ => (None, None),
    };
    let mut r_dependence = Vec::new();
    if let Some(u_p) = find(Which::U, 0.0, spec.p) {
        for &r in spec.r_values.iter().filter(|&&r| r > spec.p) {
            if let Some(u_r) = find(Which::U, 0.0, r) {
                let expected = -(3.0 / spec.p - 3.0 / r) / 2.0;
                let measured = u_r.fitted - u_p.fitted;
                r_dependence.push(RDependence {
                    r,
                    measured,
                    expected,
                    passed: (measured - expected).abs() <= R_DEPENDENCE_TOLERANCE,
                });
            }
        }
    }
    let mut monotonicity_violations = Vec::new();
    if !spec.solver.nonlinear {
        for row in rows.iter().chain(&low_rows) {
            if series.iter().any(|s| !nonincreasing_after(s, &row.quantity, 1.0)) {
                monotonicity_violations.push(row.quantity.clone());
            }
        }
    }
    let passed = rows.iter().all(|r| r.passed != Some(false))
        && high_faster_than_power
        && gap_passed != Some(false)
        && r_dependence.iter().all(|d| d.passed);
    Ok(DecayReport {
        status: ExperimentStatus::Completed,
        horizon: spec.horizon(),
        fit_window: spec.fit_window,
        repetitions: spec.repetitions,
        rows,
        low_rows,
        high_rows,
        high_faster_than_power,
        damping_gap,
        gap_passed,
        r_dependence,
        monotonicity_violations,
        x0,
        max_growth,
        passed,
    })
}

/// Comparison table: one line per fitted quantity.
pub fn write_fit_table<W: std::io::Write>(report: &DecayReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = crate::lp::besov::csv_err;
    w.write_record([
        "quantity", "l", "r", "predicted", "fitted", "spread", "stderr", "shifted", "transient", "passed",
    ])
    .map_err(err)?;
    let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v}"));
    for r in report.rows.iter().chain(&report.low_rows).chain(&report.high_rows) {
        w.write_record([
            r.quantity.clone(),
            format!("{}", r.l),
            format!("{}", r.r),
            opt(r.predicted),
            format!("{}", r.fitted),
            format!("{}", r.spread),
            format!("{}", r.stderr),
            format!("{}", r.shifted),
            format!("{}", r.transient_contaminated),
            r.passed.map_or(String::new(), |p| format!("{p}")),
        ])
        .map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

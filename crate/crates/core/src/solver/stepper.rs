//! Integrating-factor Runge-Kutta time stepping.
//!
//! With `v = (û, ω̂)`, `L(h)` the exact linear semigroup and `N` the nonlinear
//! terms, the Lawson schemes are
//!
//! ```text
//! IF-RK2:  k1 = N(v)            k2 = N(L(h)(v + h k1))
//!          v⁺ = L(h)(v + h/2 k1) + h/2 k2
//!
//! IF-RK4:  k1 = N(v)            k2 = N(L(h/2)(v + h/2 k1))
//!          k3 = N(L(h/2)v + h/2 k2)
//!          k4 = N(L(h)v + h L(h/2) k3)
//!          v⁺ = L(h)v + h/6 (L(h)k1 + 2 L(h/2)(k2 + k3) + k4)
//! ```


use super::config::{Integrator, NormRequest, RunConfig, SolverConfig, CFL};
use super::rhs::{rhs_raw, RhsWorkspace};
use crate::error::{Error, Result};
use crate::linear::LinearPropagator;
use crate::lp::{besov_norm, lq_norm, BesovSpec, DyadicPartition, FieldLike, NormSeries};
use crate::spectral::ops::leray_project;
use crate::spectral::transform::vector_to_physical;
use crate::spectral::{apply_vector, lp_norm_vector, Grid3, State, Symbol, VectorField};

/// Growth of `max|u|` over its initial value that aborts a run.
pub const BLOW_UP_FACTOR: f64 = 10.0;

type Pair = (VectorField, VectorField);

fn axpy(a: &Pair, s: f64, b: &Pair) -> Pair {
    (a.0.axpy(s, &b.0), a.1.axpy(s, &b.1))
}

/// Reusable stepper holding the propagator tables for the configured `dt`.
pub struct Stepper {
    config: SolverConfig,
    grid: Grid3,
    full: LinearPropagator,
    half: LinearPropagator,
    workspace: RhsWorkspace,
}

impl Stepper {
    pub fn new(grid: Grid3, config: &SolverConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config: config.clone(),
            grid,
            full: LinearPropagator::new(grid, config.visc, config.dt)?,
            half: LinearPropagator::new(grid, config.visc, 0.5 * config.dt)?,
            workspace: RhsWorkspace::new(grid),
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn nonlinear(&self, v: &Pair, h: f64, check_cfl: bool) -> Result<(Pair, f64)> {
        let (f, g, max_u) = rhs_raw(&self.workspace, &v.0, &v.1)?;
        if check_cfl {
            let kmax = self.grid.nyquist_wavenumber();
            if h * max_u * kmax > CFL {
                return Err(Error::Cfl {
                    dt: h,
                    suggested: CFL / (max_u * kmax),
                });
            }
        }
        Ok(((f, g), max_u))
    }

    /// One step of length `h` (the configured `dt` unless a shorter step is
    /// needed to land on a sample time). Returns the new state and `max|u|`
    /// at the start of the step.
    pub fn advance(&self, state: &State, h: f64) -> Result<(State, f64)> {
        if state.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let (full, half);
        let (lf, lh) = if h == self.config.dt {
            (&self.full, &self.half)
        } else {
            full = LinearPropagator::new(self.grid, self.config.visc, h)?;
            half = LinearPropagator::new(self.grid, self.config.visc, 0.5 * h)?;
            (&full, &half)
        };
        let lin = |p: &LinearPropagator, v: &Pair| p.apply_fields(&v.0, &v.1);
        let v: Pair = (state.u.clone(), state.omega.clone());

        let (next, max_u) = if !self.config.nonlinear {
            let max_u = physical_max(&v.0);
            (lin(lf, &v), max_u)
        } else {
            match self.config.integrator {
                Integrator::IfRk2 => {
                    let (k1, max_u) = self.nonlinear(&v, h, true)?;
                    let (k2, _) = self.nonlinear(&lin(lf, &axpy(&v, h, &k1)), h, false)?;
                    let base = lin(lf, &axpy(&v, 0.5 * h, &k1));
                    (axpy(&base, 0.5 * h, &k2), max_u)
                }
                Integrator::IfRk4 => {
                    let (k1, max_u) = self.nonlinear(&v, h, true)?;
                    let (k2, _) = self.nonlinear(&lin(lh, &axpy(&v, 0.5 * h, &k1)), h, false)?;
                    let lh_v = lin(lh, &v);
                    let (k3, _) = self.nonlinear(&axpy(&lh_v, 0.5 * h, &k2), h, false)?;
                    let lf_v = lin(lf, &v);
                    let (k4, _) = self.nonlinear(&axpy(&lf_v, h, &lin(lh, &k3)), h, false)?;
                    let mut acc = axpy(&lf_v, h / 6.0, &lin(lf, &k1));
                    acc = axpy(&acc, h / 3.0, &lin(lh, &axpy(&k2, 1.0, &k3)));
                    (axpy(&acc, h / 6.0, &k4), max_u)
                }
            }
        };
        let mut u = leray_project(&next.0);
        let mut w = next.1;
        u.enforce_hermitian();
        w.enforce_hermitian();
        u.dealias();
        w.dealias();
        let out = State::new(u, w, state.time + h)?;
        if !out.is_finite() {
            return Err(Error::NonFinite("state after step"));
        }
        Ok((out, max_u))
    }
}

fn physical_max(u: &VectorField) -> f64 {
    let [a, b, c] = vector_to_physical(u);
    crate::par::max_indexed(a.len(), |i| (a[i] * a[i] + b[i] * b[i] + c[i] * c[i]).sqrt())
}

/// One integrating-factor step of length `config.dt`.
pub fn step(state: &State, config: &SolverConfig) -> Result<State> {
    state.check_divergence_free()?;
    Stepper::new(state.grid(), config)?.advance(state, config.dt).map(|r| r.0)
}

#[derive(Clone, Debug)]
pub struct SimulationResult {
    pub series: NormSeries,
    /// States at the snapshot times (empty unless retained).
    pub snapshots: Vec<State>,
    pub final_state: State,
    pub steps: usize,
    /// Steps with `E(t_{n+1}) > E(t_n)(1 + 1e−9)`.
    pub energy_violations: usize,
    /// Largest `max_k|ξ·û|/max|û|` over accepted steps.
    pub max_divergence: f64,
    /// Largest `max|u|(t) / max|u|(0)` seen.
    pub max_growth: f64,
}

fn norm_labels(config: &SolverConfig) -> (Vec<NormRequest>, Vec<String>) {
    let mut reqs = vec![NormRequest { l: 0.0, r: 2.0 }];
    for r in &config.norm_requests {
        if !reqs.contains(r) {
            reqs.push(*r);
        }
    }
    let mut labels = vec!["energy".to_string(), "max_u".to_string()];
    for r in &reqs {
        labels.push(format!("u_{}", r.suffix()));
        labels.push(format!("omega_{}", r.suffix()));
    }
    for l in ["u_low_l2", "u_high_l2", "omega_low_l2", "omega_high_l2", "x_low", "x_high"] {
        labels.push(l.into());
    }
    (reqs, labels)
}

fn mean_free(v: &VectorField) -> VectorField {
    v.map_components(|c| {
        let mut c = c.clone();
        c.coeffs[0] = num_complex::Complex64::new(0.0, 0.0);
        c
    })
}

/// `(‖(u,ω)‖^h, ‖(u,Λω)‖^ℓ)` in `Ḃ^{3/p−1}_{p,q}` with the pair norm taken as
/// the sum of the component norms.
pub fn critical_besov_parts(state: &State, p: f64, q: f64, j0: i32) -> Result<(f64, f64)> {
    let s = 3.0 / p - 1.0;
    let lo = BesovSpec::new(s, p, q).low(j0);
    let hi = BesovSpec::new(s, p, q).high(j0);
    let u = &state.u;
    let w = &state.omega;
    let lw = apply_vector(&mean_free(w), Symbol::LambdaPow(1.0))?;
    let high = besov_norm(u, &hi)? + besov_norm(w, &hi)?;
    let low = besov_norm(u, &lo)? + besov_norm(&lw, &lo)?;
    Ok((high, low))
}

fn sample_row(state: &State, config: &SolverConfig, reqs: &[NormRequest], max_u: f64) -> Result<Vec<f64>> {
    let mut row = vec![state.energy(), max_u];
    for r in reqs {
        let (u, w) = if r.l == 0.0 {
            (state.u.clone(), state.omega.clone())
        } else {
            (
                apply_vector(&mean_free(&state.u), Symbol::LambdaPow(r.l))?,
                apply_vector(&mean_free(&state.omega), Symbol::LambdaPow(r.l))?,
            )
        };
        row.push(lp_norm_vector(&u, r.r)?);
        row.push(lp_norm_vector(&w, r.r)?);
    }
    let j0 = config.besov.cutoff_j0().unwrap_or(0);
    let lp = DyadicPartition::new(state.grid());
    let eu = state.u.shell_energy();
    let ew = state.omega.shell_energy();
    let split = |e: &[f64]| {
        let (mut lo, mut hi) = (0.0, 0.0);
        for (k2, &v) in e.iter().enumerate() {
            let w = lp.low_weight_k2(j0, k2);
            lo += w * w * v;
            hi += (1.0 - w) * (1.0 - w) * v;
        }
        (lo.sqrt(), hi.sqrt())
    };
    let (ul, uh) = split(&eu);
    let (wl, wh) = split(&ew);
    row.extend([ul, uh, wl, wh]);
    let (high, low) = if config.besov.p == 2.0 {
        critical_parts_l2(&lp, &eu, &ew, config.besov.q, j0)
    } else {
        let mf = State::new(mean_free(&state.u), mean_free(&state.omega), state.time)?;
        critical_besov_parts(&mf, config.besov.p, config.besov.q, j0)?
    };
    row.extend([low, high]);
    Ok(row)
}

/// [`critical_besov_parts`] at `p = 2` from the shell spectra (mean modes
/// ignored).
fn critical_parts_l2(lp: &DyadicPartition, eu: &[f64], ew: &[f64], q: f64, j0: i32) -> (f64, f64) {
    let grid = lp.grid();
    let s = 0.5;
    let block = |e: &[f64], j: i32, lambda: bool| {
        let sum: f64 = e
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k2, &v)| {
                let x2 = if lambda { grid.xi2_of_k2(k2) } else { 1.0 };
                lp.weight_k2(j, k2).powi(2) * x2 * v
            })
            .sum();
        2f64.powi(j).powf(s) * sum.sqrt()
    };
    let norm = |e: &[f64], lambda: bool, low: bool| {
        let v: Vec<f64> = lp
            .levels()
            .filter(|&j| if low { j <= j0 } else { j > j0 })
            .map(|j| block(e, j, lambda))
            .collect();
        lq_norm(&v, q)
    };
    let high = norm(eu, false, false) + norm(ew, false, false);
    let low = norm(eu, false, true) + norm(ew, true, true);
    (high, low)
}

/// Runs the configured simulation from a given initial state.
pub fn simulate_from(initial: &State, config: &SolverConfig) -> Result<SimulationResult> {
    config.validate()?;
    initial.check_divergence_free()?;
    let grid = initial.grid();
    let mut state = initial.clone();
    state.u.dealias();
    state.omega.dealias();
    let (reqs, labels) = norm_labels(config);
    let mut series = NormSeries::new(labels);
    let mut snapshots = Vec::new();
    let mut energy_violations = 0;
    let mut max_divergence = 0.0_f64;
    let u0_max = physical_max(&state.u);
    let mut max_growth: f64 = if u0_max > 0.0 { 1.0 } else { 0.0 };
    let mut steps = 0;
    let stepper = Stepper::new(grid, config)?;

    let mut targets = config.snapshot_times.clone();
    if targets.last().is_none_or(|&t| t < config.t_end * (1.0 - 1e-12)) {
        targets.push(config.t_end);
    }
    let sample_times: Vec<f64> = config.snapshot_times.clone();
    let record = |s: &State, max_u: f64, series: &mut NormSeries, snaps: &mut Vec<State>| -> Result<()> {
        if sample_times.iter().any(|&t| (t - s.time).abs() <= 1e-9 * t.max(1.0)) {
            series.push(s.time, &sample_row(s, config, &reqs, max_u)?)?;
            if config.retain_snapshots {
                snaps.push(s.clone());
            }
        }
        Ok(())
    };

    if sample_times.first() == Some(&0.0) {
        record(&state, u0_max, &mut series, &mut snapshots)?;
    }
    for &target in targets.iter().filter(|&&t| t > 0.0) {
        if !config.nonlinear {
            let prop = LinearPropagator::new(grid, config.visc, target - state.time)?;
            let (u, w) = prop.apply_fields(&state.u, &state.omega);
            state = State::new(u, w, target)?;
            steps += 1;
        } else {
            while state.time < target - 1e-12 * target.max(1.0) {
                let remaining = target - state.time;
                let h = if remaining <= config.dt * (1.0 + 1e-9) { remaining } else { config.dt };
                let h = if (h - config.dt).abs() <= 1e-12 * config.dt { config.dt } else { h };
                let e_before = state.energy();
                let (next, max_u) = stepper.advance(&state, h)?;
                steps += 1;
                if u0_max > 0.0 {
                    max_growth = max_growth.max(max_u / u0_max);
                    if max_u > BLOW_UP_FACTOR * u0_max {
                        return Err(Error::BlowUp {
                            time: state.time,
                            initial: u0_max,
                            current: max_u,
                        });
                    }
                }
                if next.energy() > e_before * (1.0 + 1e-9) {
                    energy_violations += 1;
                }
                let umax = next.u.max_abs();
                if umax > 0.0 {
                    max_divergence = max_divergence.max(next.divergence_residual() / umax);
                }
                state = next;
            }
            state.time = target;
        }
        let max_u = physical_max(&state.u);
        if u0_max > 0.0 {
            max_growth = max_growth.max(max_u / u0_max);
        }
        record(&state, max_u, &mut series, &mut snapshots)?;
    }
    Ok(SimulationResult {
        series,
        snapshots,
        final_state: state,
        steps,
        energy_violations,
        max_divergence,
        max_growth,
    })
}

/// Generates the initial data of a run configuration and simulates it.
pub fn simulate(run: &RunConfig) -> Result<SimulationResult> {
    let initial = run.init.generate(run.grid, run.seed)?;
    simulate_from(&initial, &run.solver)
}

//! Invariant suites behind `verify`. Each check returns a named pass/fail
//! line; a suite passes when all of its checks do.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gevrey::{
    bilinear_symbol_check, c2_threshold_scan, gevrey_norm, multiplier_equiv_check, radius_fit,
    smoothing_constant_check, Flavor, GevreyNorm, InnerNorm, SmoothingSetup, SymbolParams, EQUIV_C1, EQUIV_C2,
};
use crate::linear::{
    asymptotics_report, damped_kernel_check, decoupled_residual, effective_velocity, eigen_2x2, eigenvalues, exp2x2,
    linear_propagate, log_grid, EigenPair, SymbolMatrix,
};
use crate::linear::kernel::KERNEL_BOUND;
use crate::lp::{
    bernstein_ratio, besov_norm, bony_decompose, chemin_lerner_norm, dealiased_product, interpolation_check,
    plain_time_besov_norm, BesovSpec, DyadicPartition, FieldLike,
};
use crate::par::{self, ExecMode};
use crate::solver::{simulate_from, step, InitialData, Integrator, SolverConfig};
use crate::spectral::fft::{fft3, Direction};
use crate::spectral::ops::divergence_residual;
use crate::spectral::random::{random_scalar, random_spectral, random_spectral_vector, random_vector, rng};
use crate::spectral::{
    leray_project, lp_norm, load_snapshot, save_snapshot, Grid3, SpectralField, State, VectorField, Viscosities,
};
use crate::Complex64;

/// Eigenvalue routine under test; replaceable so the suite can be shown to
/// catch a wrong formula.
pub type EigenFn = fn(f64, &Viscosities) -> Result<EigenPair>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Core,
    Lp,
    Linear,
    Solver,
    Gevrey,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "core" => Suite::Core,
            "lp" => Suite::Lp,
            "linear" => Suite::Linear,
            "solver" => Suite::Solver,
            "gevrey" => Suite::Gevrey,
            "all" => Suite::All,
            other => return Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Lp => "lp",
            Suite::Linear => "linear",
            Suite::Solver => "solver",
            Suite::Gevrey => "gevrey",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Grid size for the field-based checks.
    pub n: usize,
    pub seed: u64,
    pub eigen: EigenFn,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n: 32,
            seed: 0,
            eigen: eigenvalues,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub suite: &'static str,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub failed: Vec<String>,
    pub passed: bool,
    pub seconds: f64,
}

type Check = fn(&VerifyOptions) -> Result<(bool, String)>;

fn checks_for(suite: Suite) -> Vec<(&'static str, &'static str, Check)> {
    let core: Vec<(&str, &str, Check)> = vec![
        ("core", "fft_roundtrip", fft_roundtrip),
        ("core", "parseval", parseval),
        ("core", "leray_projection", leray_projection),
        ("core", "exec_modes_agree", exec_modes_agree),
        ("core", "snapshot_roundtrip", snapshot_roundtrip),
        ("core", "lr_norm_ordering", lr_norm_ordering),
    ];
    let lp: Vec<(&str, &str, Check)> = vec![
        ("lp", "partition_of_unity", partition_of_unity),
        ("lp", "bony_decomposition", bony_decomposition),
        ("lp", "bernstein_bounds", bernstein_bounds),
        ("lp", "besov_interpolation", besov_interpolation),
        ("lp", "chemin_lerner_minkowski", chemin_lerner_minkowski),
    ];
    let linear: Vec<(&str, &str, Check)> = vec![
        ("linear", "eigen_closed_form", eigen_closed_form),
        ("linear", "spectral_asymptotics", spectral_asymptotics),
        ("linear", "propagator_exponential", propagator_exponential),
        ("linear", "propagator_semigroup", propagator_semigroup),
        ("linear", "effective_velocity_decoupling", effective_velocity_decoupling),
        ("linear", "damped_kernel_bound", damped_kernel_bound),
    ];
    let solver: Vec<(&str, &str, Check)> = vec![
        ("solver", "linear_mode_matches_propagator", linear_mode_matches_propagator),
        ("solver", "divergence_and_energy", divergence_and_energy),
        ("solver", "chi_zero_keeps_omega_zero", chi_zero_keeps_omega_zero),
        ("solver", "richardson_order", richardson_order),
        ("solver", "cfl_guard", cfl_guard),
    ];
    let gevrey: Vec<(&str, &str, Check)> = vec![
        ("gevrey", "smoothing_constant", smoothing_constant_holds),
        ("gevrey", "multiplier_equivalence", multiplier_equivalence),
        ("gevrey", "bilinear_threshold", bilinear_threshold),
        ("gevrey", "radius_exact_exponential", radius_exact_exponential),
        ("gevrey", "log_convexity", log_convexity),
        ("gevrey", "flavor_ordering", flavor_ordering),
    ];
    match suite {
        Suite::Core => core,
        Suite::Lp => lp,
        Suite::Linear => linear,
        Suite::Solver => solver,
        Suite::Gevrey => gevrey,
        Suite::All => [core, lp, linear, solver, gevrey].concat(),
    }
}

pub fn verify(suite: Suite, opts: &VerifyOptions) -> VerifySummary {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (s, name, f) in checks_for(suite) {
        let t = Instant::now();
        let (passed, detail) = match f(opts) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        checks.push(CheckResult {
            suite: s,
            name,
            passed,
            detail,
            seconds: t.elapsed().as_secs_f64(),
        });
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}::{}", c.suite, c.name))
        .collect();
    VerifySummary {
        suite: suite.name(),
        n: opts.n,
        seed: opts.seed,
        passed: failed.is_empty(),
        failed,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn grid(opts: &VerifyOptions) -> Result<Grid3> {
    Grid3::unit(opts.n)
}

fn max_diff(a: &SpectralField, b: &SpectralField) -> f64 {
    a.axpy(-1.0, b).max_abs()
}

fn vmax_diff(a: &VectorField, b: &VectorField) -> f64 {
    a.axpy(-1.0, b).max_abs()
}

fn verdict(ok: bool, detail: String) -> Result<(bool, String)> {
    Ok((ok, detail))
}

// ---- core

fn fft_roundtrip(o: &VerifyOptions) -> Result<(bool, String)> {
    let f = random_scalar(grid(o)?, o.seed);
    let back = SpectralField::from_physical(f.grid, &f.to_physical())?;
    let err = max_diff(&f, &back) / f.max_abs();
    verdict(err <= 1e-12, format!("relative error {err:.2e}"))
}

fn parseval(o: &VerifyOptions) -> Result<(bool, String)> {
    let f = random_scalar(grid(o)?, o.seed + 1);
    let x = f.to_physical();
    let ms = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    let err = (ms - f.energy()).abs() / ms;
    verdict(err <= 1e-12, format!("relative error {err:.2e}"))
}

fn leray_projection(o: &VerifyOptions) -> Result<(bool, String)> {
    let v = random_vector(grid(o)?, o.seed + 2);
    let p = leray_project(&v);
    let div = divergence_residual(&p) / p.max_abs();
    let idem = vmax_diff(&leray_project(&p), &p) / p.max_abs();
    verdict(div <= 1e-12 && idem <= 1e-13, format!("divergence {div:.2e}, idempotence {idem:.2e}"))
}

fn exec_modes_agree(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = grid(o)?;
    let f = random_scalar(g, o.seed + 3);
    let before = par::mode();
    let run = |m: ExecMode| {
        par::set_mode(m);
        let mut d = f.coeffs.clone();
        fft3(g.n(), &mut d, Direction::Inverse);
        (d, f.energy())
    };
    let a = run(ExecMode::Sequential);
    let b = run(ExecMode::Parallel);
    par::set_mode(before);
    let same = a.0 == b.0 && a.1.to_bits() == b.1.to_bits();
    verdict(same, format!("bit-identical: {same}"))
}

fn snapshot_roundtrip(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let s = InitialData::RandomSlope {
        sigma: 1.5,
        amplitude: 0.3,
        band: None,
    }
    .generate(g, o.seed)?;
    let visc = Viscosities::normalized();
    let path = std::env::temp_dir().join(format!("verify-snapshot-{}-{}.bin", std::process::id(), o.seed));
    save_snapshot(&s, &visc, &path)?;
    let back = load_snapshot(&path);
    let _ = std::fs::remove_file(&path);
    let back = back?;
    let ok = back.state == s && back.visc == visc;
    verdict(ok, format!("identical after reload: {ok}"))
}

fn lr_norm_ordering(o: &VerifyOptions) -> Result<(bool, String)> {
    let f = random_scalar(grid(o)?, o.seed + 4);
    let n: Vec<f64> = [1.0, 1.5, 2.0, 4.0, f64::INFINITY]
        .iter()
        .map(|&r| lp_norm(&f, r))
        .collect::<Result<_>>()?;
    let ok = n.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-12));
    verdict(ok, format!("norms r=1,1.5,2,4,inf: {n:.4?}"))
}

// ---- lp

fn band_limited(g: Grid3, seed: u64) -> SpectralField {
    random_spectral(g, seed, |_| 1.0, |i| g.in_dealiased_band(i))
}

fn partition_of_unity(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = grid(o)?;
    let f = random_scalar(g, o.seed + 5);
    let lp = DyadicPartition::new(g);
    let mut sum = f.masked(|i| if i == 0 { 1.0 } else { 0.0 });
    for j in lp.levels() {
        sum = sum.axpy(1.0, &lp.block(&f, j)?);
    }
    let err = max_diff(&sum, &f) / f.max_abs();
    verdict(err <= 1e-10, format!("reconstruction error {err:.2e}"))
}

fn bony_decomposition(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = grid(o)?;
    let mut worst = 0.0_f64;
    for k in 0..5 {
        let a = band_limited(g, o.seed + 10 + 2 * k);
        let b = band_limited(g, o.seed + 11 + 2 * k);
        let prod = dealiased_product(&a, &b)?;
        let err = bony_decompose(&a, &b)?.sum().axpy(-1.0, &prod).energy().sqrt() / prod.energy().sqrt();
        worst = worst.max(err);
    }
    verdict(worst <= 1e-10, format!("worst relative error {worst:.2e}"))
}

fn bernstein_bounds(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = grid(o)?;
    let lp = DyadicPartition::new(g);
    let f = random_scalar(g, o.seed + 6);
    let (lo, hi) = (0.75 / 2.0, 8.0 / 3.0 * 2.0);
    let mut range = (f64::INFINITY, 0.0_f64);
    for j in lp.active_levels(&f) {
        let b = lp.block(&f, j)?;
        for p in [1.0, 2.0, f64::INFINITY] {
            let r = bernstein_ratio(&b, j, p)?;
            range = (range.0.min(r), range.1.max(r));
        }
    }
    verdict(
        range.0 >= lo && range.1 <= hi,
        format!("ratios in [{:.3}, {:.3}], allowed [{lo:.3}, {hi:.3}]", range.0, range.1),
    )
}

fn besov_interpolation(o: &VerifyOptions) -> Result<(bool, String)> {
    let f = random_scalar(grid(o)?, o.seed + 7).masked(|i| if i == 0 { 0.0 } else { 1.0 });
    let mut worst = 0.0_f64;
    for (p, q) in [(2.0, 1.0), (2.0, 2.0), (4.0, f64::INFINITY)] {
        let r = interpolation_check(&f, -0.5, 1.5, 0.3, p, q)?;
        worst = worst.max(r.ratio);
    }
    verdict(worst <= 1.0 + 1e-12, format!("worst lhs/rhs {worst:.6}"))
}

fn chemin_lerner_minkowski(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let f = random_scalar(g, o.seed + 8).masked(|i| if i == 0 { 0.0 } else { 1.0 });
    let snaps: Vec<(f64, SpectralField)> = (0..6)
        .map(|k| {
            let t = 0.02 * k as f64;
            (t, f.masked(|i| (-t * g.xi2_of_k2(g.k2(i))).exp()))
        })
        .collect();
    let spec = BesovSpec::new(0.5, 2.0, 1.0);
    let mut ok = true;
    let mut detail = String::new();
    for rho in [1.0, 2.0, f64::INFINITY] {
        let cl = chemin_lerner_norm(&snaps, rho, &spec)?;
        let plain = plain_time_besov_norm(&snaps, rho, &spec)?;
        ok &= plain <= cl * (1.0 + 1e-12);
        detail.push_str(&format!("rho={rho}: plain {plain:.4e} ≤ tilde {cl:.4e}; "));
    }
    verdict(ok, detail)
}

// ---- linear

fn random_visc<R: rand::Rng>(r: &mut R) -> Result<Viscosities> {
    Viscosities::new(
        r.gen_range(0.1..2.0),
        r.gen_range(0.1..2.0),
        r.gen_range(0.1..2.0),
        r.gen_range(0.1..2.0),
    )
}

fn eigen_closed_form(o: &VerifyOptions) -> Result<(bool, String)> {
    let mut r = rng(o.seed + 20);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let visc = random_visc(&mut r)?;
        let xi = 10f64.powf(r.gen_range(-3.0..3.0));
        let got = (o.eigen)(xi, &visc)?;
        let want = eigen_2x2(SymbolMatrix::new(xi, visc)?.entries);
        for (a, b) in [(got.lambda_plus, want.lambda_plus), (got.lambda_minus, want.lambda_minus)] {
            worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
        }
    }
    let n = (o.eigen)(1.0, &Viscosities::normalized())?;
    let s2 = 2f64.sqrt();
    let norm_err = (n.lambda_plus - (2.0 + s2)).abs().max((n.lambda_minus - (2.0 - s2)).abs());
    verdict(
        worst <= 1e-10 && norm_err <= 1e-12,
        format!("worst relative error {worst:.2e}; normalized |ξ|=1 error {norm_err:.2e}"),
    )
}

fn spectral_asymptotics(_: &VerifyOptions) -> Result<(bool, String)> {
    let r = asymptotics_report(&Viscosities::normalized(), &log_grid(1e-2, 1e2, 41))?;
    verdict(
        r.passed,
        format!(
            "λ+/4χ {:.4}, λ−/(ν|ξ|²) {:.4}, λ+λ−/(χ̄μ|ξ|⁴) {:.4}",
            r.low_plus_ratio, r.low_minus_ratio, r.high_product_ratio
        ),
    )
}

/// `e^B` by scaling and squaring with a Taylor series.
fn exp_taylor(b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let norm = b.iter().flatten().map(|v| v.abs()).sum::<f64>();
    let k = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let s = 2f64.powi(-k);
    let a = [[b[0][0] * s, b[0][1] * s], [b[1][0] * s, b[1][1] * s]];
    let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    let mut term = [[1.0, 0.0], [0.0, 1.0]];
    let mut sum = term;
    for n in 1..30 {
        term = mul(term, a);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= n as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..k {
        sum = mul(sum, sum);
    }
    sum
}

fn propagator_exponential(o: &VerifyOptions) -> Result<(bool, String)> {
    let mut r = rng(o.seed + 21);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let visc = random_visc(&mut r)?;
        let xi = 10f64.powf(r.gen_range(-2.0..1.0));
        let t = [0.1, 1.0, 10.0][r.gen_range(0..3)];
        let a = SymbolMatrix::new(xi, visc)?.entries;
        let b = [[-a[0][0] * t, -a[0][1] * t], [-a[1][0] * t, -a[1][1] * t]];
        let got = exp2x2(b);
        let want = exp_taylor(b);
        let scale = want.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
        if scale < 1e-200 {
            continue;
        }
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((got[i][j] - want[i][j]).abs() / scale);
            }
        }
    }
    verdict(worst <= 1e-10, format!("worst relative error {worst:.2e}"))
}

fn propagator_semigroup(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let visc = Viscosities::normalized();
    let s = InitialData::RandomSlope {
        sigma: 1.5,
        amplitude: 1.0,
        band: None,
    }
    .generate(g, o.seed)?;
    let (t1, t2) = (0.013, 0.029);
    let once = linear_propagate(&s, t1 + t2, &visc)?;
    let twice = linear_propagate(&linear_propagate(&s, t1, &visc)?, t2, &visc)?;
    let scale = once.u.max_abs().max(once.omega.max_abs());
    let err = vmax_diff(&once.u, &twice.u).max(vmax_diff(&once.omega, &twice.omega)) / scale;
    verdict(err <= 1e-11, format!("relative error {err:.2e}"))
}

/// Random real state with a smooth spectrum, so finite differences in time
/// are accurate.
fn smooth_state(g: Grid3, seed: u64) -> Result<State> {
    let env = |r: f64| (-(r * r) / 8.0).exp();
    let keep = |i: usize| g.in_dealiased_band(i);
    let u = leray_project(&random_spectral_vector(g, seed, env, keep));
    let w = random_spectral_vector(g, seed + 1, env, keep);
    State::new(u, w, 0.0)
}

fn effective_velocity_decoupling(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n)?;
    let visc = Viscosities::normalized();
    let dt = 1e-4;
    let mut worst = 0.0_f64;
    for k in 0..3 {
        let s0 = linear_propagate(&smooth_state(g, o.seed + 30 + 2 * k)?, 0.1, &visc)?;
        let s1 = linear_propagate(&s0, dt, &visc)?;
        let s2 = linear_propagate(&s1, dt, &visc)?;
        let r0 = effective_velocity(&s0, &visc)?;
        let r1 = effective_velocity(&s1, &visc)?;
        let r2 = effective_velocity(&s2, &visc)?;
        let dr = r2.axpy(-1.0, &r0).scale(0.5 / dt);
        let res = decoupled_residual(&dr, &r1, &s1.u);
        let scale = dr.max_abs().max(r1.max_abs());
        worst = worst.max(res.max_abs() / scale);
    }
    verdict(worst <= 1e-6, format!("worst relative residual {worst:.2e}"))
}

fn damped_kernel_bound(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let lp = DyadicPartition::new(g);
    let mut worst = 0.0_f64;
    for j in lp.levels() {
        for p in [1.0, 2.0, f64::INFINITY] {
            let r = damped_kernel_check(g, j, &[0.0, 0.1, 1.0, 10.0], p, 5, o.seed + 40)?;
            worst = worst.max(r.max_ratio);
        }
    }
    verdict(worst <= KERNEL_BOUND, format!("worst ratio {worst:.4}"))
}

// ---- solver

fn small_config(dt: f64, t_end: f64, visc: Viscosities) -> SolverConfig {
    let mut c = SolverConfig::new(dt, t_end, visc);
    c.snapshot_times = vec![0.0, 0.5 * t_end, t_end];
    c.retain_snapshots = false;
    c
}

fn linear_mode_matches_propagator(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let visc = Viscosities::normalized();
    let s = InitialData::RandomSlope {
        sigma: 1.5,
        amplitude: 1.0,
        band: None,
    }
    .generate(g, o.seed)?;
    let mut c = small_config(0.1, 0.4, visc);
    c.nonlinear = false;
    let r = simulate_from(&s, &c)?;
    let want = linear_propagate(&s, 0.4, &visc)?;
    let err = vmax_diff(&r.final_state.u, &want.u) / want.u.max_abs();
    verdict(err <= 1e-12, format!("relative error {err:.2e}"))
}

fn divergence_and_energy(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let s = InitialData::TaylorGreen { amplitude: 0.1 }.generate(g, o.seed)?;
    let r = simulate_from(&s, &small_config(0.01, 0.1, Viscosities::normalized()))?;
    verdict(
        r.max_divergence <= 1e-10 && r.energy_violations == 0,
        format!("max divergence {:.2e}, energy violations {}", r.max_divergence, r.energy_violations),
    )
}

fn chi_zero_keeps_omega_zero(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let visc = Viscosities {
        chi: 0.0,
        ..Viscosities::normalized()
    };
    let s = InitialData::TaylorGreen { amplitude: 0.1 }.generate(g, o.seed)?;
    let r = simulate_from(&s, &small_config(0.01, 0.05, visc))?;
    // paired transforms leave round-off in the ω slot
    let w = r.final_state.omega.max_abs() / r.final_state.u.max_abs();
    verdict(w <= 1e-14, format!("max |ω̂| / max |û| = {w:.2e}"))
}

fn richardson_order(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let visc = Viscosities::normalized();
    let s = InitialData::RandomSlope {
        sigma: 1.5,
        amplitude: 0.2,
        band: Some(4.0),
    }
    .generate(g, o.seed)?;
    let t_end = 0.02;
    let mut detail = String::new();
    let mut ok = true;
    for (integ, want, tol) in [(Integrator::IfRk2, 2.0, 0.2), (Integrator::IfRk4, 4.0, 0.4)] {
        let run = |dt: f64| -> Result<State> {
            let mut c = small_config(dt, t_end, visc);
            c.integrator = integ;
            c.snapshot_times = vec![t_end];
            Ok(simulate_from(&s, &c)?.final_state)
        };
        let dt = if integ == Integrator::IfRk2 { 0.005 } else { 0.01 };
        let a = run(dt)?;
        let b = run(dt / 2.0)?;
        let c = run(dt / 4.0)?;
        let e1 = vmax_diff(&a.u, &b.u).max(vmax_diff(&a.omega, &b.omega));
        let e2 = vmax_diff(&b.u, &c.u).max(vmax_diff(&b.omega, &c.omega));
        let order = (e1 / e2).log2();
        ok &= (order - want).abs() <= tol;
        detail.push_str(&format!("{integ:?}: {order:.3}; "));
    }
    verdict(ok, detail)
}

fn cfl_guard(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let s = InitialData::TaylorGreen { amplitude: 5.0 }.generate(g, o.seed)?;
    match step(&s, &SolverConfig::new(0.5, 1.0, Viscosities::normalized())) {
        Err(Error::Cfl { dt, suggested }) => verdict(suggested < dt, format!("rejected dt {dt}, suggested {suggested:.3e}")),
        Err(e) => Err(e),
        Ok(_) => verdict(false, "oversized step accepted".into()),
    }
}

// ---- gevrey

fn smoothing_constant_holds(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::new(16, 32.0)?;
    let mut worst = 0.0_f64;
    let mut ok = true;
    for high in [false, true] {
        for (m, t) in [(1.0, 1.0), (2.0, 0.1), (0.5, 10.0)] {
            let setup = SmoothingSetup {
                high,
                ..SmoothingSetup::low(g, 0, o.seed)
            };
            let r = smoothing_constant_check(m, t, 10, &setup)?;
            ok &= r.passed;
            worst = worst.max(r.worst_ratio / r.c_m);
        }
    }
    verdict(ok, format!("worst ratio / C_m = {worst:.3e}"))
}

fn multiplier_equivalence(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(32))?;
    let lp = DyadicPartition::new(g);
    let blocks: Vec<i32> = (0..=4).filter(|&j| j <= lp.j_max()).collect();
    let r = multiplier_equiv_check(g, &[0.1, 1.0, 3.0], &blocks, 3, EQUIV_C1, EQUIV_C2, 2.0, o.seed)?;
    verdict(
        r.passed,
        format!(
            "K1 ≤ {:.3}, K2 ≤ {:.3}, spreads {:.3}/{:.3}",
            r.max_k1, r.max_k2, r.k1_spread, r.k2_spread
        ),
    )
}

fn bilinear_threshold(o: &VerifyOptions) -> Result<(bool, String)> {
    let base = SymbolParams {
        gamma: 1.0,
        c: 1.0,
        c1: 1.0,
        c2: 2.0,
        j_lo: 0,
        j_hi: 2,
    };
    let scan = c2_threshold_scan(base, &[1.0, 1.5, 2.0, 3.0, 4.0], &[0.1, 1.0, 10.0], 300, o.seed)?;
    let zero = bilinear_symbol_check(SymbolParams { gamma: 0.0, ..base }, 300, o.seed)?;
    verdict(
        scan.smallest_passing == Some(2.0) && zero.passed,
        format!("smallest passing c2 {:?}", scan.smallest_passing),
    )
}

fn radius_exact_exponential(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = grid(o)?;
    let f = SpectralField::from_coeffs(
        g,
        (0..g.len())
            .map(|i| Complex64::new((-0.3 * g.xi_norm(i)).exp(), 0.0))
            .collect(),
        true,
    )?;
    let fit = radius_fit(&f, (1, g.n() / 3))?;
    let err = (fit.radius_estimate - 0.3).abs();
    verdict(err <= 1e-6, format!("radius {:.9}", fit.radius_estimate))
}

fn log_convexity(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let f = random_scalar(g, o.seed + 50);
    let norm = |a: f64| {
        gevrey_norm(
            &f,
            &GevreyNorm {
                a,
                flavor: Flavor::L1,
                inner: InnerNorm::Lp(2.0),
            },
        )
    };
    let mut worst = f64::NEG_INFINITY;
    for (a, b) in [(0.0, 0.2), (0.05, 0.5), (0.1, 1.0)] {
        let m = norm(0.5 * (a + b))?.ln();
        let side = 0.5 * (norm(a)?.ln() + norm(b)?.ln());
        worst = worst.max(m - side);
    }
    verdict(worst <= 1e-9, format!("worst midpoint excess {worst:.2e}"))
}

fn flavor_ordering(o: &VerifyOptions) -> Result<(bool, String)> {
    let g = Grid3::unit(o.n.min(16))?;
    let f = random_scalar(g, o.seed + 51).masked(|i| if i == 0 { 0.0 } else { 1.0 });
    let a = 0.2;
    let inner = InnerNorm::Besov(BesovSpec::new(0.0, 2.0, 2.0));
    let n = |a: f64, flavor| gevrey_norm(&f, &GevreyNorm { a, flavor, inner });
    let e = n(a, Flavor::Euclid)?;
    let l1 = n(a, Flavor::L1)?;
    let e3 = n(3f64.sqrt() * a, Flavor::Euclid)?;
    let plain = besov_norm(&f, &BesovSpec::new(0.0, 2.0, 2.0))?;
    let ok = plain <= e && e <= l1 * (1.0 + 1e-12) && l1 <= e3 * (1.0 + 1e-12);
    verdict(ok, format!("{plain:.4e} ≤ {e:.4e} ≤ {l1:.4e} ≤ {e3:.4e}"))
}

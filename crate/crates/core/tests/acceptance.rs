//! Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
//! as arguments to run a subset. Set `ACCEPTANCE_STRICT=1` to exit nonzero
//! when any criterion fails.

mod common;

use std::time::Instant;

use common::{dealiased_shells, dft3, expected_exponents, expm_mode, NsReference, C64};
use micropolar::decay::{run_decay_experiment, ExperimentSpec, Which};
use micropolar::gevrey::{
    bilinear_symbol_check, c2_threshold_scan, multiplier_equiv_check, smoothing_constant, smoothing_constant_check,
    SmoothingSetup, SymbolParams, BILINEAR_BOUND, EQUIV_BOUND, EQUIV_C1, EQUIV_C2,
};
use micropolar::linear::{
    damped_kernel_check, decoupled_residual, effective_velocity, eigenvalues, linear_propagate, LinearPropagator,
};
use micropolar::lp::{bernstein_ratio, bony_decompose, phi, DyadicPartition};
use micropolar::solver::{simulate_from, smallness_report, InitialData, Integrator, SolverConfig};
use micropolar::spectral::random::{random_scalar, random_spectral_vector, random_vector, rng};
use micropolar::spectral::transform::vector_to_physical;
use micropolar::spectral::{leray_project, Grid3, SpectralField, State, VectorField, Viscosities};
use micropolar::Complex64;
use nalgebra::{Matrix2, SymmetricEigen};
use rand::Rng;

type Check = Result<(bool, String), String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: f64,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, name: "eigenvalue closed form", budget: 1.0, run: c1_eigen },
    Criterion { id: 2, name: "spectral asymptotics", budget: 1.0, run: c2_asymptotics },
    Criterion { id: 3, name: "exact linear propagator", budget: 10.0, run: c3_propagator },
    Criterion { id: 4, name: "effective-velocity decoupling", budget: 30.0, run: c4_effective },
    Criterion { id: 5, name: "damped kernel bound", budget: 60.0, run: c5_kernel },
    Criterion { id: 6, name: "Littlewood-Paley identities", budget: 60.0, run: c6_littlewood_paley },
    Criterion { id: 7, name: "solver correctness", budget: 300.0, run: c7_solver },
    Criterion { id: 8, name: "decay rates, linear regime", budget: 300.0, run: c8_linear_decay },
    Criterion { id: 9, name: "decay rates, nonlinear small amplitude", budget: 900.0, run: c9_nonlinear_decay },
    Criterion { id: 10, name: "smoothing constant C_m", budget: 60.0, run: c10_smoothing },
    Criterion { id: 11, name: "l1/Euclidean multiplier equivalence", budget: 60.0, run: c11_equivalence },
    Criterion { id: 12, name: "bilinear symbol bounds", budget: 60.0, run: c12_bilinear },
];

fn main() {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for c in CRITERIA.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match outcome {
            Ok((ok, d)) => (ok && secs < c.budget, d),
            Err(msg) => (false, format!("error: {msg}")),
        };
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {} ({secs:.1}s, budget {}s): {detail}", c.id, c.name, c.budget);
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed {failed:?}");
        if std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// ---- 1

fn c1_eigen() -> Check {
    let mut r = rng(1);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let xi = 10f64.powf(r.gen_range(-2.0..2.0));
        let v = Viscosities::new(
            r.gen_range(0.1..10.0),
            r.gen_range(0.1..10.0),
            r.gen_range(0.1..10.0),
            r.gen_range(0.0..10.0),
        )
        .map_err(e)?;
        let got = eigenvalues(xi, &v).map_err(e)?;
        // symmetric similarity transform of the symbol, diagonalised numerically
        let x2 = xi * xi;
        let s = Matrix2::new(
            (v.nu + v.chi) * x2,
            -2.0 * v.chi * xi,
            -2.0 * v.chi * xi,
            v.mu * x2 + 4.0 * v.chi,
        );
        let ev = SymmetricEigen::new(s).eigenvalues;
        let (hi, lo) = (ev[0].max(ev[1]), ev[0].min(ev[1]));
        worst = worst.max(rel(got.lambda_plus, hi)).max(rel(got.lambda_minus, lo));
    }
    let n = eigenvalues(1.0, &Viscosities::normalized()).map_err(e)?;
    let unit = (n.lambda_plus - (2.0 + 2f64.sqrt())).abs().max((n.lambda_minus - (2.0 - 2f64.sqrt())).abs());
    Ok((
        worst <= 1e-10 && unit <= 1e-14,
        format!("worst relative error {worst:.2e} over 1000 cases; |ξ|=1 normalized off by {unit:.1e}"),
    ))
}

// ---- 2

fn c2_asymptotics() -> Check {
    let band = |x: f64| (0.98..=1.02).contains(&x);
    let mut detail = Vec::new();
    let mut ok = true;
    for v in [Viscosities::normalized(), Viscosities::new(1.0, 1.0, 1.0, 1.0).map_err(e)?] {
        let lo = eigenvalues(1e-2, &v).map_err(e)?;
        let hi = eigenvalues(1e2, &v).map_err(e)?;
        let a = lo.lambda_plus / (4.0 * v.chi);
        let b = lo.lambda_minus / (v.nu * 1e-4);
        let c = hi.lambda_plus * hi.lambda_minus / ((v.nu + v.chi) * v.mu * 1e8);
        ok &= band(a) && band(b) && band(c);
        detail.push(format!("λ+/4χ={a:.5} λ-/ν|ξ|²={b:.5} λ+λ-/χ̄μ|ξ|⁴={c:.5}"));
    }
    Ok((ok, detail.join("; ")))
}

// ---- 3

fn c3_propagator() -> Check {
    let g = Grid3::new(16, 4.0 * std::f64::consts::PI).map_err(e)?;
    let mut r = rng(3);
    let mut worst = 0.0_f64;
    let viscs = [Viscosities::normalized(), Viscosities::new(1.0, 0.3, 2.0, 0.7).map_err(e)?];
    let u = leray_project(&random_vector(g, 31));
    let w = random_vector(g, 32);
    let to = |c: [Complex64; 3]| c.map(|z| C64::new(z.re, z.im));
    let norm = |a: &[C64]| a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for v in viscs {
        for t in [0.1, 1.0, 10.0] {
            let p = LinearPropagator::new(g, v, t).map_err(e)?;
            for _ in 0..100 {
                let idx = r.gen_range(1..g.len());
                let (lu, lw) = p.apply_mode(idx, u.at(idx), w.at(idx));
                let (ou, ow) = expm_mode(g.wavevector(idx), [v.nu, v.chi, v.mu, v.kappa], t, to(u.at(idx)), to(w.at(idx)));
                let (lu, lw) = (to(lu), to(lw));
                let diff: Vec<C64> = (0..3).map(|d| lu[d] - ou[d]).chain((0..3).map(|d| lw[d] - ow[d])).collect();
                worst = worst.max(norm(&diff) / norm(&[ou, ow].concat()));
            }
        }
    }
    let v = Viscosities::normalized();
    let mut semi = 0.0_f64;
    for (s, t) in [(0.3, 0.7), (1.0, 2.5), (0.05, 4.0)] {
        let (u1, w1) = LinearPropagator::new(g, v, s).map_err(e)?.apply_fields(&u, &w);
        let (u2, w2) = LinearPropagator::new(g, v, t).map_err(e)?.apply_fields(&u1, &w1);
        let (u3, w3) = LinearPropagator::new(g, v, s + t).map_err(e)?.apply_fields(&u, &w);
        let scale = u3.max_abs().max(w3.max_abs());
        semi = semi.max(u2.axpy(-1.0, &u3).max_abs() / scale).max(w2.axpy(-1.0, &w3).max_abs() / scale);
    }
    Ok((
        worst <= 1e-10 && semi <= 1e-11,
        format!("max relative error vs dense exponential {worst:.2e}; semigroup defect {semi:.2e}"),
    ))
}

// ---- 4

fn effective_reference(s: &State) -> VectorField {
    let g = s.grid();
    VectorField::from_mode_fn(g, true, |i| {
        let k = g.wavevector(i);
        let x2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let w = s.omega.at(i);
        let iu = Complex64::new(0.0, 1.0);
        let curl = [
            iu * (k[1] * w[2] - k[2] * w[1]),
            iu * (k[2] * w[0] - k[0] * w[2]),
            iu * (k[0] * w[1] - k[1] * w[0]),
        ];
        let u = s.u.at(i);
        [0, 1, 2].map(|d| curl[d] - u[d] * (0.5 * x2))
    })
}

fn c4_effective() -> Check {
    let g = Grid3::new(32, 2.0 * std::f64::consts::PI).map_err(e)?;
    let v = Viscosities::normalized();
    let dt = 1e-4;
    let mut worst = 0.0_f64;
    let mut def = 0.0_f64;
    for seed in 0..5u64 {
        let env = |r: f64| (-r * r / 8.0).exp();
        let u = leray_project(&random_spectral_vector(g, 40 + seed, env, |_| true));
        let w = random_spectral_vector(g, 50 + seed, env, |_| true);
        let mut states = vec![State::new(u, w, 0.0).map_err(e)?];
        for _ in 0..4 {
            let next = linear_propagate(states.last().unwrap(), dt, &v).map_err(e)?;
            states.push(next);
        }
        let rs: Vec<VectorField> = states.iter().map(|s| effective_velocity(s, &v).map_err(e)).collect::<Result<_, _>>()?;
        let own = effective_reference(&states[2]);
        def = def.max(own.axpy(-1.0, &rs[2]).max_abs() / own.max_abs());
        // fourth-order central difference at the middle state
        let dr = rs[0]
            .axpy(-8.0, &rs[1])
            .axpy(8.0, &rs[3])
            .axpy(-1.0, &rs[4])
            .scale(1.0 / (12.0 * dt));
        let res = decoupled_residual(&dr, &rs[2], &states[2].u);
        let r1 = &rs[2];
        worst = worst.max(res.max_abs() / dr.max_abs().max(r1.max_abs()));
    }
    Ok((
        worst <= 1e-6 && def <= 1e-14,
        format!("worst relative residual {worst:.2e} at dt=1e-4; R vs direct formula {def:.1e}"),
    ))
}

// ---- 5

fn c5_kernel() -> Check {
    let g = Grid3::new(16, 2.0 * std::f64::consts::PI).map_err(e)?;
    let lp = DyadicPartition::new(g);
    let times = [0.0, 0.01, 0.1, 1.0, 10.0];
    let mut worst = 0.0_f64;
    for j in lp.levels() {
        for p in [1.0, 2.0, f64::INFINITY] {
            let r = damped_kernel_check(g, j, &times, p, 20, 500).map_err(e)?;
            worst = worst.max(r.max_ratio);
        }
    }
    // L² ratio from Parseval for comparison
    let c = 9.0 / 16.0;
    let mut parseval = 0.0_f64;
    for j in lp.levels() {
        for seed in 0..20u64 {
            let f = random_scalar(g, 500 + seed);
            for &t in &times {
                let (mut num, mut den) = (0.0, 0.0);
                for i in 1..g.len() {
                    let x = g.xi_norm(i);
                    let a = phi(x / 2f64.powi(j)) * f.coeffs[i].norm();
                    num += (a * (-(x * x - c * 4f64.powi(j)) * t).exp()).powi(2);
                    den += a * a;
                }
                if den > 0.0 {
                    parseval = parseval.max((num / den).sqrt());
                }
            }
        }
    }
    Ok((
        worst <= 4.0 && parseval <= 4.0,
        format!("worst ratio {worst:.4} over all levels, p ∈ {{1,2,∞}}; direct L² ratio {parseval:.4}"),
    ))
}

// ---- 6

fn reference_product(a: &SpectralField, b: &SpectralField) -> Vec<C64> {
    let n = a.grid.n();
    let synth = |f: &SpectralField| {
        let mut d: Vec<C64> = f.coeffs.iter().map(|z| C64::new(z.re, z.im)).collect();
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

fn c6_littlewood_paley() -> Check {
    let g = Grid3::new(64, 2.0 * std::f64::consts::PI).map_err(e)?;
    let lp = DyadicPartition::new(g);
    let f = random_scalar(g, 60);
    let mut sum = SpectralField::zeros(g);
    for j in lp.levels() {
        sum = sum.axpy(1.0, &lp.block(&f, j).map_err(e)?);
    }
    let mut recon = sum.coeffs[0].norm();
    for i in 1..g.len() {
        recon = recon.max((sum.coeffs[i] - f.coeffs[i]).norm());
    }
    recon /= f.max_abs();

    let limited = |seed: u64| {
        let mut h = random_scalar(g, seed);
        h.dealias();
        h.coeffs[0] = Complex64::new(0.0, 0.0);
        h
    };
    let mut bony = 0.0_f64;
    for k in 0..50u64 {
        let (a, b) = (limited(600 + 2 * k), limited(601 + 2 * k));
        let sum = bony_decompose(&a, &b).map_err(e)?.sum();
        let reference = reference_product(&a, &b);
        let scale = reference.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let err = sum
            .coeffs
            .iter()
            .zip(&reference)
            .map(|(x, y)| (C64::new(x.re, x.im) - y).norm())
            .fold(0.0, f64::max);
        bony = bony.max(err / scale);
    }

    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    let (mut lo2, mut hi2) = (f64::INFINITY, 0.0_f64);
    for j in lp.levels() {
        for seed in 0..3u64 {
            let block = lp.block(&random_scalar(g, 700 + seed), j).map_err(e)?;
            if block.max_abs() == 0.0 {
                continue;
            }
            for p in [1.0, 2.0, f64::INFINITY] {
                let r = bernstein_ratio(&block, j, p).map_err(e)?;
                lo = lo.min(r);
                hi = hi.max(r);
            }
            let (mut num, mut den) = (0.0, 0.0);
            for i in 0..g.len() {
                let a = block.coeffs[i].norm_sqr();
                num += g.xi_norm(i).powi(2) * a;
                den += a;
            }
            let r2 = (num / den).sqrt() / 2f64.powi(j);
            lo2 = lo2.min(r2);
            hi2 = hi2.max(r2);
        }
    }
    let slack = 2.0;
    let bern_ok = lo >= 0.75 / slack && hi <= (8.0 / 3.0) * slack && lo2 >= 0.75 && hi2 <= 8.0 / 3.0;
    Ok((
        recon <= 1e-10 && bony <= 1e-10 && bern_ok,
        format!(
            "reconstruction {recon:.1e}; Bony vs direct product {bony:.1e} (50 pairs); Bernstein ratios in [{lo:.3}, {hi:.3}], L² [{lo2:.3}, {hi2:.3}]"
        ),
    ))
}

// ---- 7

fn max_phys_diff(a: &VectorField, b: &VectorField) -> f64 {
    let (pa, pb) = (vector_to_physical(a), vector_to_physical(b));
    pa.iter()
        .zip(&pb)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .fold(0.0, f64::max)
}

fn c7_solver() -> Check {
    let g = Grid3::new(64, 4.0 * std::f64::consts::PI).map_err(e)?;
    let mut violations = 0usize;
    let mut max_div = 0.0_f64;
    let mut runs = 0usize;
    let mut track = |r: &micropolar::solver::SimulationResult| {
        violations += r.energy_violations;
        max_div = max_div.max(r.max_divergence);
        runs += 1;
    };

    // χ = 0 against the reference Navier-Stokes stepper
    let nu = 0.5;
    let no_spin = Viscosities { nu, chi: 0.0, mu: 1.0, kappa: 1.0 };
    let data = InitialData::RandomSlope { sigma: 1.5, amplitude: 0.6, band: Some(4.0) }
        .generate(g, 70)
        .map_err(e)?;
    let s0 = State::new(data.u.clone(), VectorField::zeros(g), 0.0).map_err(e)?;
    let reference = NsReference::new(64, g.length(), nu);
    let start = vector_to_physical(&s0.u);
    let u0 = reference.to_modes([&start[0], &start[1], &start[2]]);
    let t_end = 0.2;
    let mut gaps = Vec::new();
    let mut leak = 0.0_f64;
    for dt in [0.008, 0.004] {
        let mut c = SolverConfig::new(dt, t_end, no_spin);
        c.retain_snapshots = false;
        let r = simulate_from(&s0, &c).map_err(e)?;
        track(&r);
        leak = leak.max(r.final_state.omega.max_abs() / r.final_state.u.max_abs());
        let out = reference.to_physical(&reference.run(&u0, dt, (t_end / dt).round() as usize));
        let lib = vector_to_physical(&r.final_state.u);
        let (mut err, mut scale) = (0.0_f64, 0.0_f64);
        for (x, y) in lib.iter().zip(&out) {
            for (p, q) in x.iter().zip(y) {
                err = err.max((p - q).abs());
                scale = scale.max(q.abs());
            }
        }
        gaps.push(err / scale);
    }
    let ns_ok = gaps[1] < 1e-6 && (gaps[1] <= gaps[0] / 8.0 || gaps[1] < 1e-12) && leak <= 1e-14;

    // Richardson estimates of the temporal order
    let v = Viscosities::normalized();
    let s = InitialData::RandomSlope { sigma: 1.5, amplitude: 0.2, band: Some(4.0) }
        .generate(g, 71)
        .map_err(e)?;
    let mut orders = Vec::new();
    for (integ, dt) in [(Integrator::IfRk2, 0.005), (Integrator::IfRk4, 0.01)] {
        let mut finals = Vec::new();
        for h in [dt, dt / 2.0, dt / 4.0] {
            let mut c = SolverConfig::new(h, 0.02, v);
            c.integrator = integ;
            c.retain_snapshots = false;
            let r = simulate_from(&s, &c).map_err(e)?;
            track(&r);
            finals.push(r.final_state);
        }
        let d = |a: &State, b: &State| max_phys_diff(&a.u, &b.u).max(max_phys_diff(&a.omega, &b.omega));
        orders.push((d(&finals[0], &finals[1]) / d(&finals[1], &finals[2])).log2());
    }
    let order_ok = (orders[0] - 2.0).abs() <= 0.2 && (orders[1] - 4.0).abs() <= 0.4;
    let ok = ns_ok && order_ok && violations == 0 && max_div <= 1e-10;
    Ok((
        ok,
        format!(
            "χ=0 gap to reference NS {:.1e} → {:.1e} (dt 0.008 → 0.004), ω leak {leak:.1e}; orders rk2 {:.3}, rk4 {:.3}; divergence {max_div:.1e}; energy increases {violations} over {runs} runs",
            gaps[0], gaps[1], orders[0], orders[1]
        ),
    ))
}

// ---- 8, 9

fn decay_summary(report: &micropolar::decay::DecayReport, which: Which) -> Option<(f64, f64)> {
    report
        .rows
        .iter()
        .find(|r| r.which == which && r.l == 0.0 && r.r == 2.0)
        .and_then(|r| r.predicted.map(|p| (p, r.fitted)))
}

fn c8_linear_decay() -> Check {
    let g = Grid3::new(128, 32.0 * std::f64::consts::PI).map_err(e)?;
    let spec = ExperimentSpec::linear(g, 1.5, (1.0, 50.0));
    let report = run_decay_experiment(&spec).map_err(e)?;
    let (pu, fu) = decay_summary(&report, Which::U).ok_or("no u row")?;
    let (pw, fw) = decay_summary(&report, Which::Omega).ok_or("no ω row")?;
    let gap = report.damping_gap.ok_or("no gap")?;
    let v = spec.solver.visc;
    let times = spec.sample_times();
    let in_window: Vec<f64> = times.iter().copied().filter(|t| *t >= 1.0 - 1e-9).collect();
    let (ou, ow) = expected_exponents(&dealiased_shells(128, g.length(), None), [v.nu, v.chi, v.mu, v.kappa], 1.5, &in_window);
    let ok = (fu - (-0.75)).abs() <= 0.05 && (fw - (-0.25)).abs() <= 0.08 && (gap - 0.5).abs() <= 0.1;
    Ok((
        ok,
        format!(
            "u {fu:.3} (target {pu:.2} ± 0.05, lattice model {ou:.3}); ω {fw:.3} (target {pw:.2} ± 0.08, lattice model {ow:.3}); gap {gap:.3} (target 0.5 ± 0.1)"
        ),
    ))
}

fn c9_nonlinear_decay() -> Check {
    let g = Grid3::new(64, 16.0 * std::f64::consts::PI).map_err(e)?;
    let spec = ExperimentSpec::nonlinear(g, 1.5, (1.0, 30.0), 0.5, 0.05);
    let first = InitialData::RandomSlope { sigma: 1.5, amplitude: spec.amplitude, band: spec.band }
        .generate(g, spec.seed)
        .map_err(e)?;
    let small = smallness_report(&first, 2.0, 1.0, 0).map_err(e)?;
    let report = run_decay_experiment(&spec).map_err(e)?;
    let (pu, fu) = decay_summary(&report, Which::U).ok_or("no u row")?;
    let (pw, fw) = decay_summary(&report, Which::Omega).ok_or("no ω row")?;
    let v = spec.solver.visc;
    let in_window: Vec<f64> = spec.sample_times().into_iter().filter(|t| *t >= 1.0 - 1e-9).collect();
    let (ou, ow) = expected_exponents(&dealiased_shells(64, g.length(), None), [v.nu, v.chi, v.mu, v.kappa], 1.5, &in_window);
    let highs: Vec<String> = report.high_rows.iter().map(|r| format!("{} {:.1}", r.quantity, r.fitted)).collect();
    let ok = (fu - pu).abs() <= 0.15 && (fw - pw).abs() <= 0.15 && report.high_faster_than_power;
    Ok((
        ok,
        format!(
            "X0 {:.3e}, growth {:.3}; u {fu:.3} (target {pu:.2} ± 0.15, lattice model {ou:.3}); ω {fw:.3} (target {pw:.2} ± 0.15, lattice model {ow:.3}); high-frequency exponents [{}] vs −5",
            small.x0,
            report.max_growth,
            highs.join(", ")
        ),
    ))
}

// ---- 10

fn c10_smoothing() -> Check {
    let g = Grid3::new(16, 32.0).map_err(e)?;
    let mut ok = true;
    let mut lines = Vec::new();
    for m in [0.5, 1.0, 2.0, 4.0] {
        let printed = 1.0 / (1.0 - 2f64.powf(-m)) + (8.0 * m).powf(m) / (1.0 - (-0.125f64).exp());
        // the series the constant is meant to dominate
        let series: f64 = (-60..=60).map(|l: i32| 2f64.powf(m * l as f64) * (-(2f64.powi(l - 2))).exp()).sum();
        ok &= rel(smoothing_constant(m), printed) <= 1e-14 && series <= printed;
        let mut worst = 0.0_f64;
        for t in [0.1, 1.0, 10.0] {
            let r = smoothing_constant_check(m, t, 100, &SmoothingSetup::low(g, 0, 1000)).map_err(e)?;
            ok &= r.passed;
            worst = worst.max(r.worst_ratio);
        }
        lines.push(format!("m={m}: C_m={printed:.4e}, series {series:.3}, worst ratio {worst:.3e}"));
    }
    Ok((ok, lines.join("; ")))
}

// ---- 11

fn c11_equivalence() -> Check {
    let g = Grid3::new(32, 2.0 * std::f64::consts::PI).map_err(e)?;
    let lp = DyadicPartition::new(g);
    if lp.j_max() < 4 {
        return Err(format!("grid only reaches level {}", lp.j_max()));
    }
    let r = multiplier_equiv_check(g, &[0.1, 1.0, 3.0], &[0, 1, 2, 3, 4], 10, EQUIV_C1, EQUIV_C2, 2.0, 1100).map_err(e)?;
    let ok = r.max_k1 <= EQUIV_BOUND && r.max_k2 <= EQUIV_BOUND && (EQUIV_C1 - 0.9 / 3f64.sqrt()).abs() < 1e-15;
    Ok((
        ok,
        format!(
            "(c1, c2) = ({:.4}, {}); max C1 {:.3}, max C2 {:.3} over j ∈ 0..4, α ∈ {{0.1, 1, 3}}; spreads {:.3}/{:.3}",
            EQUIV_C1, EQUIV_C2, r.max_k1, r.max_k2, r.k1_spread, r.k2_spread
        ),
    ))
}

// ---- 12

fn analytic_bounds(p: &SymbolParams, samples: usize, seed: u64) -> (f64, f64) {
    let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let dphi = |r: f64| {
        let h = 1e-5;
        (-phi(r + 2.0 * h) + 8.0 * phi(r + h) - 8.0 * phi(r - h) + phi(r - 2.0 * h)) / (12.0 * h)
    };
    let mut r = rng(seed);
    let mut sample = |j: i32| {
        let rad = 2f64.powi(j) * r.gen_range(0.75..8.0 / 3.0);
        let d: [f64; 3] = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let n = norm(d).max(1e-12);
        d.map(|x| rad * x / n)
    };
    let (mut bx, mut be) = (0.0_f64, 0.0_f64);
    for _ in 0..samples {
        let xi = sample(p.j_hi);
        let eta = sample(p.j_lo);
        let s = [xi[0] + eta[0], xi[1] + eta[1], xi[2] + eta[2]];
        let (nx, ne, ns) = (norm(xi), norm(eta), norm(s));
        let (lx, le) = (2f64.powi(-p.j_hi), 2f64.powi(-p.j_lo));
        let (fx, fe) = (phi(nx * lx), phi(ne * le));
        let ex = (p.gamma * (p.c * ns - p.c1 * nx - p.c2 * ne)).exp();
        let gx: Vec<f64> = (0..3)
            .map(|k| ex * fe * (p.gamma * (p.c * s[k] / ns - p.c1 * xi[k] / nx) * fx + dphi(nx * lx) * lx * xi[k] / nx))
            .collect();
        let ge: Vec<f64> = (0..3)
            .map(|k| ex * fx * (p.gamma * (p.c * s[k] / ns - p.c2 * eta[k] / ne) * fe + dphi(ne * le) * le * eta[k] / ne))
            .collect();
        bx = bx.max(nx * norm([gx[0], gx[1], gx[2]]));
        be = be.max(ne * norm([ge[0], ge[1], ge[2]]));
    }
    (bx, be)
}

fn c12_bilinear() -> Check {
    let base = SymbolParams { gamma: 1.0, c: 1.0, c1: 1.0, c2: 2.0, j_lo: 0, j_hi: 2 };
    let candidates = [1.0, 1.5, 2.0, 3.0, 4.0];
    let gammas = [0.1, 1.0, 10.0];
    let a = c2_threshold_scan(base, &candidates, &gammas, 300, 1200).map_err(e)?;
    let b = c2_threshold_scan(base, &candidates, &gammas, 300, 1200).map_err(e)?;
    let reproducible = a.passed == b.passed && a.smallest_passing == b.smallest_passing;
    // with c = c₁ the exponent is at most (c − c₂)|η|, negative enough once c₂ ≥ c + 1
    let expected = base.c + 1.0;
    let mut ok = reproducible && a.smallest_passing == Some(expected);
    let (mut lib, mut own) = (0.0_f64, 0.0_f64);
    for &c2 in candidates.iter().filter(|c| **c >= expected) {
        for &gamma in &gammas {
            for (j_lo, j_hi) in [(0, 2), (1, 4), (-1, 3)] {
                let p = SymbolParams { gamma, c2, j_lo, j_hi, ..base };
                let r = bilinear_symbol_check(p, 300, 1201).map_err(e)?;
                ok &= r.passed;
                lib = lib.max(r.max_xi_bound).max(r.max_eta_bound);
                let (x, y) = analytic_bounds(&p, 300, 1202);
                own = own.max(x).max(y);
            }
        }
    }
    ok &= lib <= BILINEAR_BOUND && own <= BILINEAR_BOUND;
    Ok((
        ok,
        format!(
            "threshold scan {:?} → smallest c2 {:?} (expected {expected}), reproducible {reproducible}; max |ξ||∂m| {lib:.3} (analytic {own:.3}) vs {BILINEAR_BOUND}",
            a.passed, a.smallest_passing
        ),
    ))
}

mod common;

use common::NsReference;
use micropolar::solver::{simulate_from, InitialData, SolverConfig};
use micropolar::spectral::transform::vector_to_physical;
use micropolar::spectral::{Grid3, State, VectorField, Viscosities};

const NU: f64 = 0.5;

fn no_spin() -> Viscosities {
    Viscosities {
        nu: NU,
        chi: 0.0,
        mu: 1.0,
        kappa: 1.0,
    }
}

fn initial(g: Grid3) -> State {
    let s = InitialData::RandomSlope {
        sigma: 1.5,
        amplitude: 0.6,
        band: Some(4.0),
    }
    .generate(g, 11)
    .unwrap();
    State::new(s.u, VectorField::zeros(g), 0.0).unwrap()
}

/// Max-norm distance between the library velocity and the reference.
fn distance(state: &State, reference: &NsReference, dt: f64, t_end: f64) -> (f64, f64) {
    let [a, b, c] = vector_to_physical(&state.u);
    let start = vector_to_physical(&initial(state.grid()).u);
    let u0 = reference.to_modes([&start[0], &start[1], &start[2]]);
    let steps = (t_end / dt).round() as usize;
    let out = reference.to_physical(&reference.run(&u0, dt, steps));
    let mut err = 0.0f64;
    let mut scale = 0.0f64;
    for (lib, r) in [a, b, c].iter().zip(&out) {
        for (x, y) in lib.iter().zip(r) {
            err = err.max((x - y).abs());
            scale = scale.max(y.abs());
        }
    }
    (err, scale)
}

#[test]
fn zero_coupling_matches_navier_stokes_reference() {
    let g = Grid3::new(16, 2.0 * std::f64::consts::PI).unwrap();
    let reference = NsReference::new(16, g.length(), NU);
    let s = initial(g);
    let t_end = 0.2;
    let mut errs = Vec::new();
    for dt in [0.02, 0.01] {
        let mut c = SolverConfig::new(dt, t_end, no_spin());
        c.snapshot_times = vec![t_end];
        let r = simulate_from(&s, &c).unwrap();
        assert_eq!(r.energy_violations, 0);
        let leak = r.final_state.omega.max_abs() / r.final_state.u.max_abs();
        assert!(leak <= 1e-14, "{leak:e}");
        let (e, scale) = distance(&r.final_state, &reference, dt, t_end);
        errs.push(e / scale);
    }
    // both schemes are fourth order, so their gap shrinks at least like dt³
    assert!(errs[1] < 1e-6, "{errs:?}");
    assert!(errs[1] <= errs[0] / 8.0 || errs[1] < 1e-12, "{errs:?}");
}

#[test]
fn energy_and_divergence_along_runs() {
    let g = Grid3::new(16, 2.0 * std::f64::consts::PI).unwrap();
    for (seed, visc) in [(1u64, Viscosities::normalized()), (2, no_spin()), (3, Viscosities::new(1.0, 1.0, 1.0, 1.0).unwrap())] {
        let s = InitialData::RandomSlope { sigma: 1.5, amplitude: 0.5, band: None }.generate(g, seed).unwrap();
        let mut c = SolverConfig::new(0.02, 0.4, visc);
        c.snapshot_times = (0..=10).map(|i| 0.04 * i as f64).collect();
        let r = simulate_from(&s, &c).unwrap();
        assert_eq!(r.energy_violations, 0);
        assert!(r.max_divergence <= 1e-10, "{}", r.max_divergence);
        let e = r.series.column("energy").unwrap();
        assert!(e.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }
}

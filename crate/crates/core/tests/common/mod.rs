//! Reference implementations shared by the integration tests. None of them
//! call into the library's numerics; they only read its data structures.

#![allow(dead_code)]

use nalgebra::{Complex, Matrix2, Matrix6};
use rustfft::FftPlanner;

pub type C64 = Complex<f64>;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense 6×6 generator of the linear micropolar system at wavevector `xi`,
/// acting on `(û, ω̂)` with `û` divergence free:
///
/// ```text
/// û' = −(ν+χ)|ξ|² û + 2χ iξ×ω̂
/// ω̂' = −μ|ξ|² ω̂ − κ ξ(ξ·ω̂) − 4χ ω̂ + 2χ iξ×û
/// ```
pub fn linear_generator(xi: [f64; 3], nu: f64, chi: f64, mu: f64, kappa: f64) -> Matrix6<C64> {
    let x2: f64 = xi.iter().map(|v| v * v).sum();
    let mut g = Matrix6::<C64>::zeros();
    // iξ× as a matrix
    let cross = [
        [0.0, -xi[2], xi[1]],
        [xi[2], 0.0, -xi[0]],
        [-xi[1], xi[0], 0.0],
    ];
    for a in 0..3 {
        g[(a, a)] = C64::new(-(nu + chi) * x2, 0.0);
        g[(3 + a, 3 + a)] = C64::new(-mu * x2 - 4.0 * chi, 0.0);
        for b in 0..3 {
            let c = C64::new(0.0, 2.0 * chi * cross[a][b]);
            g[(a, 3 + b)] += c;
            g[(3 + a, b)] += c;
            g[(3 + a, 3 + b)] -= C64::new(kappa * xi[a] * xi[b], 0.0);
        }
    }
    g
}

/// `exp(tG)` applied to one mode.
pub fn expm_mode(xi: [f64; 3], visc: [f64; 4], t: f64, u: [C64; 3], w: [C64; 3]) -> ([C64; 3], [C64; 3]) {
    let g = linear_generator(xi, visc[0], visc[1], visc[2], visc[3]) * C64::new(t, 0.0);
    let e = g.exp();
    let v = nalgebra::Vector6::from_column_slice(&[u[0], u[1], u[2], w[0], w[1], w[2]]);
    let r = e * v;
    ([r[0], r[1], r[2]], [r[3], r[4], r[5]])
}

/// Plain 3D DFT of a row-major `n³` array. Forward is normalized by `1/n³`.
pub fn dft3(n: usize, data: &mut [C64], forward: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let plan = if forward { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
    let mut line = vec![ZERO; n];
    for axis in 0..3 {
        let stride = n.pow(2 - axis as u32);
        for base in 0..n * n * n {
            let pos = (base / stride) % n;
            if pos != 0 {
                continue;
            }
            for (m, l) in line.iter_mut().enumerate() {
                *l = data[base + m * stride];
            }
            plan.process(&mut line);
            for (m, l) in line.iter().enumerate() {
                data[base + m * stride] = *l;
            }
        }
    }
    if forward {
        let s = 1.0 / (n * n * n) as f64;
        data.iter_mut().for_each(|c| *c *= s);
    }
}

fn signed(m: usize, n: usize) -> i64 {
    if m <= n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

/// Incompressible Navier-Stokes on `[0, L)³`, rotational form, explicit
/// classical RK4 for all terms, two-thirds truncation.
pub struct NsReference {
    pub n: usize,
    pub nu: f64,
    k: Vec<[f64; 3]>,
    keep: Vec<bool>,
}

impl NsReference {
    pub fn new(n: usize, length: f64, nu: f64) -> Self {
        let dk = 2.0 * std::f64::consts::PI / length;
        let cut = ((n - 1) / 3) as i64;
        let mut k = Vec::with_capacity(n * n * n);
        let mut keep = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = [signed(a, n), signed(b, n), signed(c, n)];
                    keep.push(m.iter().all(|v| v.abs() <= cut));
                    k.push(m.map(|v| v as f64 * dk));
                }
            }
        }
        Self { n, nu, k, keep }
    }

    /// Fourier coefficients of three physical component arrays.
    pub fn to_modes(&self, phys: [&[f64]; 3]) -> [Vec<C64>; 3] {
        phys.map(|p| {
            let mut d: Vec<C64> = p.iter().map(|&v| C64::new(v, 0.0)).collect();
            dft3(self.n, &mut d, true);
            for (c, &k) in d.iter_mut().zip(&self.keep) {
                if !k {
                    *c = ZERO;
                }
            }
            d
        })
    }

    pub fn to_physical(&self, modes: &[Vec<C64>; 3]) -> [Vec<f64>; 3] {
        [0, 1, 2].map(|c| {
            let mut d = modes[c].clone();
            dft3(self.n, &mut d, false);
            d.into_iter().map(|z| z.re).collect()
        })
    }

    fn project(&self, v: &mut [Vec<C64>; 3]) {
        for i in 0..v[0].len() {
            let k = self.k[i];
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            if !self.keep[i] {
                for c in v.iter_mut() {
                    c[i] = ZERO;
                }
                continue;
            }
            if k2 == 0.0 {
                continue;
            }
            let dot = (v[0][i] * k[0] + v[1][i] * k[1] + v[2][i] * k[2]) / k2;
            for (c, kc) in v.iter_mut().zip(k) {
                c[i] -= dot * kc;
            }
        }
    }

    /// `P(u × ∇×u) + νΔu`.
    pub fn rhs(&self, u: &[Vec<C64>; 3]) -> [Vec<C64>; 3] {
        let i = C64::new(0.0, 1.0);
        let len = u[0].len();
        let mut vort = [vec![ZERO; len], vec![ZERO; len], vec![ZERO; len]];
        for m in 0..len {
            let k = self.k[m];
            vort[0][m] = i * (k[1] * u[2][m] - k[2] * u[1][m]);
            vort[1][m] = i * (k[2] * u[0][m] - k[0] * u[2][m]);
            vort[2][m] = i * (k[0] * u[1][m] - k[1] * u[0][m]);
        }
        let up = self.to_physical(u);
        let wp = self.to_physical(&vort);
        let cross = [
            (0..len).map(|p| up[1][p] * wp[2][p] - up[2][p] * wp[1][p]).collect::<Vec<_>>(),
            (0..len).map(|p| up[2][p] * wp[0][p] - up[0][p] * wp[2][p]).collect::<Vec<_>>(),
            (0..len).map(|p| up[0][p] * wp[1][p] - up[1][p] * wp[0][p]).collect::<Vec<_>>(),
        ];
        let mut out = self.to_modes([&cross[0], &cross[1], &cross[2]]);
        self.project(&mut out);
        for m in 0..len {
            let k = self.k[m];
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            for c in 0..3 {
                out[c][m] -= u[c][m] * (self.nu * k2);
            }
        }
        out
    }

    fn axpy(u: &[Vec<C64>; 3], h: f64, k: &[Vec<C64>; 3]) -> [Vec<C64>; 3] {
        [0, 1, 2].map(|c| u[c].iter().zip(&k[c]).map(|(a, b)| a + b * h).collect())
    }

    pub fn step(&self, u: &[Vec<C64>; 3], h: f64) -> [Vec<C64>; 3] {
        let k1 = self.rhs(u);
        let k2 = self.rhs(&Self::axpy(u, 0.5 * h, &k1));
        let k3 = self.rhs(&Self::axpy(u, 0.5 * h, &k2));
        let k4 = self.rhs(&Self::axpy(u, h, &k3));
        [0, 1, 2].map(|c| {
            (0..u[c].len())
                .map(|m| u[c][m] + (k1[c][m] + (k2[c][m] + k3[c][m]) * 2.0 + k4[c][m]) * (h / 6.0))
                .collect()
        })
    }

    pub fn run(&self, u: &[Vec<C64>; 3], dt: f64, steps: usize) -> [Vec<C64>; 3] {
        let mut u = u.clone();
        for _ in 0..steps {
            u = self.step(&u, dt);
        }
        u
    }
}

/// Expected squared `L²` norms of `(u, ω)` for solenoidal Gaussian data with
/// `E|û|² ∝ |ξ|^{2σ−3}`, `E|ω̂|² ∝ |ξ|^{2σ−5}` on the listed shells, evolved
/// by the linear system. `shells` holds `(|ξ|, number of lattice points)`.
pub fn expected_energies(shells: &[(f64, usize)], visc: [f64; 4], sigma: f64, t: f64) -> (f64, f64) {
    let [nu, chi, mu, kappa] = visc;
    let (mut eu, mut ew) = (0.0, 0.0);
    for &(x, count) in shells {
        let a = x.powf(sigma - 1.5);
        let b = x.powf(sigma - 2.5);
        // symmetric form of the coupled symbol acting on (û, iξ×ω̂/|ξ|)
        let m = Matrix2::new(
            -(nu + chi) * x * x,
            2.0 * chi * x,
            2.0 * chi * x,
            -(mu * x * x + 4.0 * chi),
        ) * t;
        let e = m.exp();
        let c = count as f64;
        eu += c * 2.0 * (e[(0, 0)].powi(2) * a * a + e[(0, 1)].powi(2) * b * b);
        ew += c
            * (2.0 * (e[(1, 0)].powi(2) * a * a + e[(1, 1)].powi(2) * b * b)
                + (-2.0 * t * ((mu + kappa) * x * x + 4.0 * chi)).exp() * b * b);
    }
    (eu, ew)
}

/// Nonzero shells `(|ξ|, count)` of the two-thirds band of an `n³` grid.
pub fn dealiased_shells(n: usize, length: f64, band: Option<f64>) -> Vec<(f64, usize)> {
    let cut = ((n - 1) / 3) as i64;
    let dk = 2.0 * std::f64::consts::PI / length;
    let mut counts = std::collections::BTreeMap::new();
    for a in -cut..=cut {
        for b in -cut..=cut {
            for c in -cut..=cut {
                let k2 = a * a + b * b + c * c;
                if k2 > 0 {
                    *counts.entry(k2).or_insert(0usize) += 1;
                }
            }
        }
    }
    counts
        .into_iter()
        .map(|(k2, c)| ((k2 as f64).sqrt() * dk, c))
        .filter(|(x, _)| band.map_or(true, |b| *x <= b))
        .collect()
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Log-log slopes of the expected `‖u‖₂`, `‖ω‖₂` over `times`.
pub fn expected_exponents(shells: &[(f64, usize)], visc: [f64; 4], sigma: f64, times: &[f64]) -> (f64, f64) {
    let lt: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let (mut lu, mut lw) = (Vec::new(), Vec::new());
    for &t in times {
        let (eu, ew) = expected_energies(shells, visc, sigma, t);
        lu.push(0.5 * eu.ln());
        lw.push(0.5 * ew.ln());
    }
    (slope(&lt, &lu), slope(&lt, &lw))
}

/// Eigenvalues of a real 2×2 matrix through nalgebra's Schur solver.
pub fn eigen_2x2_reference(m: [[f64; 2]; 2]) -> (C64, C64) {
    let a = Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
    let ev = a.complex_eigenvalues();
    let (p, q) = (ev[0], ev[1]);
    if p.re >= q.re {
        (p, q)
    } else {
        (q, p)
    }
}

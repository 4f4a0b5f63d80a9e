//! Solver configuration and the flat `key = value` run-file format.
//!
//! ```text
//! # comment
//! grid.n = 64
//! grid.L = 50.27
//! visc.nu = 0.5
//! init.kind = random_slope
//! init.sigma = 1.5
//! solver.dt = 0.05
//! norms.requests = 0:2, 1:2, 0:inf
//! snapshots.times = geom:1:50:24
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::initial::InitialData;
use crate::error::{Error, Result};
use crate::lp::BesovSpec;
use crate::spectral::{Grid3, Viscosities};

/// Courant number used for the advective stability bound.
pub const CFL: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Integrator {
    IfRk2,
    IfRk4,
}

impl Integrator {
    pub fn order(&self) -> u32 {
        match self {
            Integrator::IfRk2 => 2,
            Integrator::IfRk4 => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "if_rk2" | "rk2" => Ok(Integrator::IfRk2),
            "if_rk4" | "rk4" => Ok(Integrator::IfRk4),
            other => Err(Error::Config(format!("unknown integrator `{other}`"))),
        }
    }
}

/// `‖Λ^l ·‖_{L^r}` column request.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormRequest {
    pub l: f64,
    pub r: f64,
}

impl NormRequest {
    pub fn parse(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("norm request `{s}` is not l:r")))?;
        let l = parse_f64("norms.requests", l)?;
        let r = parse_f64("norms.requests", r)?;
        if r < 1.0 || l.is_nan() {
            return Err(Error::Config(format!("norm request `{s}` needs r ≥ 1")));
        }
        Ok(Self { l, r })
    }

    pub fn suffix(&self) -> String {
        format!("l{}_r{}", fmt_num(self.l), fmt_num(self.r))
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    pub integrator: Integrator,
    pub visc: Viscosities,
    /// Times at which snapshots and norm samples are taken (sorted, in `[0, t_end]`).
    pub snapshot_times: Vec<f64>,
    /// `false` evolves only the linear part, exactly.
    pub nonlinear: bool,
    pub norm_requests: Vec<NormRequest>,
    /// Regularity, exponents and cut-off of the low/high Besov columns; `s` is
    /// ignored (it is always `3/p − 1`).
    pub besov: BesovSpec,
    /// Keep full states at the snapshot times.
    pub retain_snapshots: bool,
}

impl SolverConfig {
    pub fn new(dt: f64, t_end: f64, visc: Viscosities) -> Self {
        Self {
            dt,
            t_end,
            integrator: Integrator::IfRk4,
            visc,
            snapshot_times: vec![t_end],
            nonlinear: true,
            norm_requests: vec![NormRequest { l: 0.0, r: 2.0 }],
            besov: BesovSpec::new(0.0, 2.0, 1.0).low(0),
            retain_snapshots: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("solver.dt = {} must be positive", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("solver.t_end = {} must be positive", self.t_end)));
        }
        self.visc.validate_allow_zero_chi()?;
        if self.snapshot_times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::UnorderedTimes);
        }
        if let Some(t) = self
            .snapshot_times
            .iter()
            .find(|t| !(**t >= 0.0 && **t <= self.t_end * (1.0 + 1e-12)))
        {
            return Err(Error::Config(format!("snapshot time {t} outside [0, t_end]")));
        }
        if self.besov.cutoff_j0().is_none() {
            return Err(Error::Config("besov cut-off j0 is required".into()));
        }
        self.besov.validate()
    }
}

/// Everything a `simulate` run needs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub grid: Grid3,
    pub init: InitialData,
    pub solver: SolverConfig,
    pub seed: u64,
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let v = v.trim();
    match v.to_ascii_lowercase().as_str() {
        "inf" | "infinity" => return Ok(f64::INFINITY),
        "pi" => return Ok(std::f64::consts::PI),
        _ => {}
    }
    // `k*pi` shorthand for box lengths
    if let Some(k) = v.strip_suffix("pi").or_else(|| v.strip_suffix("π")) {
        let k = k.trim_end_matches('*').trim();
        if let Ok(k) = k.parse::<f64>() {
            return Ok(k * std::f64::consts::PI);
        }
    }
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: `{v}` is not a number")))
}

/// Parses `a, b, c` or `geom:a:b:n` / `lin:a:b:n`.
pub fn parse_times(key: &str, v: &str) -> Result<Vec<f64>> {
    let v = v.trim();
    for (prefix, geometric) in [("geom:", true), ("lin:", false)] {
        if let Some(rest) = v.strip_prefix(prefix) {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!("{key}: expected {prefix}a:b:n")));
            }
            let a = parse_f64(key, parts[0])?;
            let b = parse_f64(key, parts[1])?;
            let n: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{key}: bad count `{}`", parts[2])))?;
            if n < 2 || !(b > a) || (geometric && !(a > 0.0)) {
                return Err(Error::Config(format!("{key}: invalid range `{v}`")));
            }
            return Ok((0..n)
                .map(|i| {
                    let s = i as f64 / (n - 1) as f64;
                    if geometric {
                        (a.ln() + s * (b.ln() - a.ln())).exp()
                    } else {
                        a + s * (b - a)
                    }
                })
                .collect());
        }
    }
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}

/// Flat `key = value` map with typed accessors; unknown keys are reported.
#[derive(Clone, Debug, Default)]
pub struct KeyValues {
    map: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key `{}`", n + 1, k.trim())));
            }
        }
        Ok(Self { map })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.map.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        self.get(key).map_or(Ok(default), |v| parse_f64(key, v))
    }

    pub fn f64_req(&self, key: &str) -> Result<f64> {
        let v = self.get(key).ok_or_else(|| Error::Config(format!("missing key `{key}`")))?;
        parse_f64(key, v)
    }

    pub fn i64_or(&self, key: &str, default: i64) -> Result<i64> {
        self.get(key).map_or(Ok(default), |v| {
            v.parse()
                .map_err(|_| Error::Config(format!("{key}: `{v}` is not an integer")))
        })
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some("true" | "1" | "yes" | "on") => Ok(true),
            Some("false" | "0" | "no" | "off") => Ok(false),
            Some(v) => Err(Error::Config(format!("{key}: `{v}` is not a boolean"))),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}

const KNOWN_PREFIXES: [&str; 9] = [
    "grid.",
    "visc.",
    "init.",
    "solver.",
    "norms.",
    "snapshots.",
    "besov.",
    "seed",
    "experiment.",
];

impl RunConfig {
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        if let Some(k) = kv.keys().find(|k| !KNOWN_PREFIXES.iter().any(|p| k.starts_with(p))) {
            return Err(Error::Config(format!("unknown key `{k}`")));
        }
        let n = kv.i64_or("grid.n", 32)?;
        if n <= 0 {
            return Err(Error::Config("grid.n must be positive".into()));
        }
        let grid = Grid3::new(n as usize, kv.f64_or("grid.L", 2.0 * std::f64::consts::PI)?)?;
        let d = Viscosities::normalized();
        let visc = Viscosities {
            nu: kv.f64_or("visc.nu", d.nu)?,
            chi: kv.f64_or("visc.chi", d.chi)?,
            mu: kv.f64_or("visc.mu", d.mu)?,
            kappa: kv.f64_or("visc.kappa", d.kappa)?,
        };
        let dt = kv.f64_or("solver.dt", 0.01)?;
        let t_end = kv.f64_or("solver.t_end", 1.0)?;
        let mut solver = SolverConfig::new(dt, t_end, visc);
        if let Some(v) = kv.get("solver.integrator") {
            solver.integrator = Integrator::parse(v)?;
        }
        solver.nonlinear = kv.bool_or("solver.nonlinear", true)?;
        solver.retain_snapshots = kv.bool_or("snapshots.retain", true)?;
        if let Some(v) = kv.get("snapshots.times") {
            solver.snapshot_times = parse_times("snapshots.times", v)?;
        }
        if let Some(v) = kv.get("norms.requests") {
            solver.norm_requests = v
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(NormRequest::parse)
                .collect::<Result<_>>()?;
        }
        let p = kv.f64_or("besov.p", 2.0)?;
        let q = kv.f64_or("besov.q", 1.0)?;
        let j0 = kv.i64_or("besov.j0", 0)? as i32;
        solver.besov = BesovSpec::new(3.0 / p - 1.0, p, q).low(j0);
        solver.validate()?;
        let init = InitialData::from_key_values(kv)?;
        let seed = kv.i64_or("seed", 0)? as u64;
        Ok(Self {
            grid,
            init,
            solver,
            seed,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_key_values(&KeyValues::load(path)?)
    }
}

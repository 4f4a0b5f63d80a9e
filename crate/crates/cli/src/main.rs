//! `micropolar`: run simulations, Besov and spectrum analyses, decay
//! experiments and the verification suites from the command line.
//!
//! Every subcommand writes its tables (CSV) and a JSON summary into
//! `--out-dir`; `--json` also prints the summary to stdout. The exit code is
//! 0 on success and 1 on any error or failed check.

use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use micropolar::decay::{fit_points, run_decay_experiment, verify, write_fit_table, ExperimentSpec, Suite, VerifyOptions};
use micropolar::gevrey::radius_fit;
use micropolar::linear::{asymptotics_report, log_grid, spectrum_row, write_spectrum_csv};
use micropolar::lp::{besov_block_table, lq_norm, write_block_table, BesovSpec};
use micropolar::solver::{simulate, smallness_report, KeyValues, RunConfig};
use micropolar::spectral::{load_snapshot, save_snapshot, VectorField, Viscosities};

#[derive(Parser)]
#[command(name = "micropolar", version, about = "Pseudo-spectral micropolar laboratory")]
struct Cli {
    /// Run file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV and JSON outputs.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Overrides the seed of the run file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the JSON summary to stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the configured run and write the norm series.
    Simulate {
        /// Also save the final state as a snapshot.
        #[arg(long)]
        save_final: bool,
    },
    /// Dyadic block table and Besov norm of a snapshot field.
    AnalyzeBesov(BesovArgs),
    /// Eigenvalues of the linear symbol over a log-spaced |ξ| grid.
    LinearSpectrum {
        #[arg(long, default_value_t = 1e-2)]
        xi_min: f64,
        #[arg(long, default_value_t = 1e2)]
        xi_max: f64,
        #[arg(long, default_value_t = 81)]
        points: usize,
    },
    /// Fit power laws to a norm series, or run the configured decay experiment.
    DecayFit {
        /// Norm-series CSV written by `simulate`; without it the run file is
        /// treated as an experiment description.
        #[arg(long)]
        series: Option<PathBuf>,
        /// Columns to fit (default: every column except `t`).
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        /// Fit window `a:b`.
        #[arg(long, default_value = "1:50")]
        window: String,
    },
    /// Analyticity-radius estimate from shell maxima of a snapshot.
    GevreyRadius {
        #[arg(long)]
        snapshot: PathBuf,
        /// Lattice shell range `j0..j1`.
        #[arg(long, default_value = "2..12")]
        shells: String,
        #[arg(long, value_enum, default_value_t = FieldChoice::U)]
        field: FieldChoice,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Grid size for the field-based checks.
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
}

#[derive(Args)]
struct BesovArgs {
    #[arg(long)]
    snapshot: PathBuf,
    #[arg(long, value_enum, default_value_t = FieldChoice::U)]
    field: FieldChoice,
    #[arg(long, default_value_t = 0.5)]
    s: f64,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Restrict to `j ≤ j0` (`low`) or `j > j0` (`high`).
    #[arg(long, value_enum, default_value_t = BandChoice::Full)]
    band: BandChoice,
    #[arg(long, default_value_t = 0)]
    j0: i32,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldChoice {
    U,
    Omega,
}

#[derive(Clone, Copy, ValueEnum)]
enum BandChoice {
    Full,
    Low,
    High,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    fs::create_dir_all(&cli.out_dir).with_context(|| format!("creating {}", cli.out_dir.display()))?;
    let (summary, ok) = match &cli.command {
        Command::Simulate { save_final } => cmd_simulate(cli, *save_final)?,
        Command::AnalyzeBesov(a) => cmd_besov(cli, a)?,
        Command::LinearSpectrum { xi_min, xi_max, points } => cmd_spectrum(cli, *xi_min, *xi_max, *points)?,
        Command::DecayFit { series, labels, window } => cmd_decay(cli, series.as_deref(), labels, window)?,
        Command::GevreyRadius { snapshot, shells, field } => cmd_radius(cli, snapshot, shells, *field)?,
        Command::Verify { suite, n } => cmd_verify(cli, suite, *n)?,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    }
    Ok(ok)
}

fn key_values(cli: &Cli) -> Result<KeyValues> {
    let mut kv = match &cli.config {
        Some(p) => KeyValues::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => KeyValues::default(),
    };
    if let Some(s) = cli.seed {
        kv.set("seed", &s.to_string());
    }
    Ok(kv)
}

fn write_json(cli: &Cli, name: &str, v: &Value) -> Result<PathBuf> {
    let path = cli.out_dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(v)?)?;
    Ok(path)
}

fn create(cli: &Cli, name: &str) -> Result<(File, PathBuf)> {
    let path = cli.out_dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok((f, path))
}

fn cmd_simulate(cli: &Cli, save_final: bool) -> Result<(Value, bool)> {
    let run = RunConfig::from_key_values(&key_values(cli)?)?;
    let initial = run.init.generate(run.grid, run.seed)?;
    let small = smallness_report(&initial, run.solver.besov.p, run.solver.besov.q, run.solver.besov.cutoff_j0().unwrap_or(0))?;
    let res = simulate(&run)?;
    let (f, series_path) = create(cli, "series.csv")?;
    res.series.write_csv(f)?;
    let mut summary = json!({
        "command": "simulate",
        "grid_n": run.grid.n(),
        "length": run.grid.length(),
        "seed": run.seed,
        "t_end": res.final_state.time,
        "steps": res.steps,
        "energy_violations": res.energy_violations,
        "max_divergence": res.max_divergence,
        "max_growth": res.max_growth,
        "x0": small.x0,
        "x0_low": small.low_part,
        "x0_high": small.high_part,
        "series": series_path,
    });
    if save_final {
        let path = cli.out_dir.join("final.snap");
        save_snapshot(&res.final_state, &run.solver.visc, &path)?;
        summary["snapshot"] = json!(path);
    }
    write_json(cli, "simulate.json", &summary)?;
    Ok((summary, true))
}

fn pick(state: &micropolar::spectral::State, field: FieldChoice) -> VectorField {
    match field {
        FieldChoice::U => state.u.clone(),
        FieldChoice::Omega => state.omega.clone(),
    }
}

fn cmd_besov(cli: &Cli, a: &BesovArgs) -> Result<(Value, bool)> {
    let snap = load_snapshot(&a.snapshot).with_context(|| format!("reading {}", a.snapshot.display()))?;
    let mut f = pick(&snap.state, a.field);
    for c in f.comps.iter_mut() {
        c.coeffs[0] = Default::default();
    }
    let base = BesovSpec::new(a.s, a.p, a.q);
    let spec = match a.band {
        BandChoice::Full => base,
        BandChoice::Low => base.low(a.j0),
        BandChoice::High => base.high(a.j0),
    };
    let rows = besov_block_table(&f, &spec)?;
    let norm = lq_norm(&rows.iter().map(|r| r.weighted).collect::<Vec<_>>(), a.q);
    let (file, path) = create(cli, "besov_blocks.csv")?;
    write_block_table(&rows, file)?;
    let summary = json!({
        "command": "analyze-besov",
        "snapshot": a.snapshot,
        "time": snap.state.time,
        "s": a.s, "p": a.p, "q": a.q,
        "norm": norm,
        "blocks": path,
    });
    write_json(cli, "besov.json", &summary)?;
    Ok((summary, true))
}

fn viscosities(cli: &Cli) -> Result<Viscosities> {
    let kv = key_values(cli)?;
    let d = Viscosities::normalized();
    Ok(Viscosities::new(
        kv.f64_or("visc.nu", d.nu)?,
        kv.f64_or("visc.chi", d.chi)?,
        kv.f64_or("visc.mu", d.mu)?,
        kv.f64_or("visc.kappa", d.kappa)?,
    )?)
}

fn cmd_spectrum(cli: &Cli, lo: f64, hi: f64, points: usize) -> Result<(Value, bool)> {
    let visc = viscosities(cli)?;
    if points < 2 {
        bail!("need at least two points");
    }
    let grid = log_grid(lo, hi, points);
    let rows = grid.iter().map(|&x| spectrum_row(x, &visc)).collect::<Result<Vec<_>, _>>()?;
    let (file, path) = create(cli, "spectrum.csv")?;
    write_spectrum_csv(&rows, file)?;
    let mut summary = json!({
        "command": "linear-spectrum",
        "viscosities": visc,
        "spectrum": path,
    });
    // the asymptotic ratios need a wide enough grid
    if let Ok(rep) = asymptotics_report(&visc, &grid) {
        summary["asymptotics"] = json!({
            "low_plus_ratio": rep.low_plus_ratio,
            "low_minus_ratio": rep.low_minus_ratio,
            "low_minus_slope": rep.low_minus_slope,
            "high_product_ratio": rep.high_product_ratio,
            "high_sum_ratio": rep.high_sum_ratio,
            "tolerance": rep.tolerance,
            "passed": rep.passed,
        });
    }
    write_json(cli, "spectrum.json", &summary)?;
    Ok((summary, true))
}

fn parse_window(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("window `{s}` is not a:b"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn read_series(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut cols = vec![Vec::new(); headers.len()];
    for rec in r.records() {
        let rec = rec?;
        for (c, v) in cols.iter_mut().zip(rec.iter()) {
            c.push(v.trim().parse::<f64>().with_context(|| format!("bad number `{v}`"))?);
        }
    }
    Ok((headers, cols))
}

fn cmd_decay(cli: &Cli, series: Option<&Path>, labels: &[String], window: &str) -> Result<(Value, bool)> {
    if let Some(path) = series {
        let window = parse_window(window)?;
        let (headers, cols) = read_series(path)?;
        let t_col = headers.iter().position(|h| h == "t").ok_or_else(|| anyhow!("series has no `t` column"))?;
        let wanted: Vec<&String> = if labels.is_empty() {
            headers.iter().filter(|h| *h != "t").collect()
        } else {
            labels.iter().collect()
        };
        let (file, out) = create(cli, "fits.csv")?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record(["label", "exponent", "stderr", "t_a", "t_b", "n_points"])?;
        let mut fits = Vec::new();
        let mut ok = true;
        for label in wanted {
            let c = headers.iter().position(|h| h == label).ok_or_else(|| anyhow!("no column `{label}`"))?;
            match fit_points(&cols[t_col], &cols[c], label, window) {
                Ok(f) => {
                    w.write_record([
                        label.clone(),
                        f.exponent.to_string(),
                        f.stderr.to_string(),
                        window.0.to_string(),
                        window.1.to_string(),
                        f.n_points.to_string(),
                    ])?;
                    fits.push(json!({"label": label, "fit": f}));
                }
                Err(e) => {
                    ok = false;
                    eprintln!("{label}: {e}");
                    fits.push(json!({"label": label, "error": e.to_string()}));
                }
            }
        }
        w.flush()?;
        let summary = json!({"command": "decay-fit", "series": path, "fits": fits, "table": out});
        write_json(cli, "decay_fit.json", &summary)?;
        return Ok((summary, ok));
    }
    let spec = ExperimentSpec::from_key_values(&key_values(cli)?)?;
    let report = run_decay_experiment(&spec)?;
    let (file, table) = create(cli, "decay_fits.csv")?;
    write_fit_table(&report, file)?;
    let summary = json!({
        "command": "decay-fit",
        "spec": spec,
        "report": report,
        "table": table,
    });
    write_json(cli, "decay_report.json", &summary)?;
    Ok((summary, report.passed))
}

fn parse_shells(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("shell range `{s}` is not j0..j1"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn cmd_radius(cli: &Cli, snapshot: &Path, shells: &str, field: FieldChoice) -> Result<(Value, bool)> {
    let snap = load_snapshot(snapshot).with_context(|| format!("reading {}", snapshot.display()))?;
    let fit = radius_fit(&pick(&snap.state, field), parse_shells(shells)?)?;
    let summary = json!({
        "radius": fit.radius_estimate,
        "residual": fit.residual,
        "window": fit.fit_window,
        "shells_used": fit.shells_used,
        "time": snap.state.time,
    });
    write_json(cli, "gevrey_radius.json", &summary)?;
    Ok((summary, true))
}

fn cmd_verify(cli: &Cli, suite: &str, n: usize) -> Result<(Value, bool)> {
    let suite = Suite::parse(suite)?;
    let opts = VerifyOptions {
        n,
        seed: cli.seed.unwrap_or(0),
        ..Default::default()
    };
    let summary = verify(suite, &opts);
    if !cli.json {
        for c in &summary.checks {
            println!(
                "{} {}::{} ({:.2}s) {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.seconds,
                c.detail
            );
        }
    }
    let v = serde_json::to_value(&summary)?;
    write_json(cli, &format!("verify_{}.json", summary.suite), &v)?;
    Ok((v, summary.passed))
}

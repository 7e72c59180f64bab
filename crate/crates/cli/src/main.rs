use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use emhd_core::diagnostics::{energy_functional, NormSeries};
use emhd_core::experiments::{
    convergence_study, inflation_experiment, scaling_sweep, self_check, ExperimentConfig,
};
use emhd_core::io::{format_f64, load_config, write_series, write_snapshot, write_table, Snapshot};
use emhd_core::profiles::{orthogonality_ratio_of, tstar, DataFamily, Shear};
use emhd_core::solver::RunStatus;
use emhd_core::spectral::{
    l2_norm, perp_gradient, sobolev_norm, sobolev_norm_vector, sup_norm_vector, Field, Grid, NormFlavor,
};
use emhd_core::Error;

const EXIT_VALIDATION: u8 = 1;
const EXIT_UNSTABLE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "emhd25d", version, about = "Norm-inflation laboratory for 2.5D electron MHD with fractional resistivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Run configuration; the headline configuration when omitted.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Output directory, overriding `out_dir` from the configuration.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Initial data snapshot and norms.
    Ic(Common),
    /// Approximate solution at a given time: snapshot and norms.
    Approx {
        #[command(flatten)]
        common: Common,
        /// Evaluation time; defaults to the inflation time.
        #[arg(short, long)]
        time: Option<f64>,
    },
    /// Inflation run.
    Run(Common),
    /// Scaling sweep with power-law fits.
    Sweep(Common),
    /// Grid refinement study of the inflation run.
    Converge(Common),
    /// Invariant self-test suites.
    Check,
}

enum Outcome {
    Done,
    Unstable,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Unstable) => ExitCode::from(EXIT_UNSTABLE),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { EXIT_VALIDATION } else { EXIT_INTERNAL })
        }
    }
}

fn dispatch(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Check => check(),
        Command::Ic(c) => {
            let (cfg, out) = setup(&c)?;
            ic(&cfg, &out)
        }
        Command::Approx { common, time } => {
            let (cfg, out) = setup(&common)?;
            approx(&cfg, &out, time)
        }
        Command::Run(c) => {
            let (cfg, out) = setup(&c)?;
            run(&cfg, &out)
        }
        Command::Sweep(c) => {
            let (cfg, out) = setup(&c)?;
            sweep(&cfg, &out)
        }
        Command::Converge(c) => {
            let (cfg, out) = setup(&c)?;
            converge(&cfg, &out)
        }
    }
}

fn setup(c: &Common) -> Result<(ExperimentConfig, PathBuf), Error> {
    let cfg = match &c.config {
        Some(path) => load_config(path)?,
        None => ExperimentConfig::default(),
    };
    let out = c.out.clone().or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&out)?;
    Ok((cfg, out))
}

fn orders(cfg: &ExperimentConfig) -> Vec<f64> {
    let mut s = cfg.s_list.clone();
    if !s.contains(&cfg.params.beta) {
        s.push(cfg.params.beta);
    }
    s
}

fn one_row(path: &Path, time: f64, named: Vec<(String, f64)>) -> Result<(), Error> {
    let (names, values): (Vec<String>, Vec<f64>) = named.into_iter().unzip();
    let mut series = NormSeries::new(names.clone());
    series.push(time, values.clone())?;
    write_series(&series, path)?;
    for (n, v) in names.iter().zip(&values) {
        println!("  {n:<24} {v:.6e}");
    }
    Ok(())
}

fn snap(grid: &Grid<f64>, time: f64, fields: &[&Field<f64>]) -> Result<Snapshot, Error> {
    Ok(Snapshot {
        grid_n: grid.n() as u32,
        half_width: grid.spec().half_width(),
        time,
        fields: fields.iter().map(|f| f.values().map(|v| v.into_owned())).collect::<Result<_, _>>()?,
    })
}

fn ic(cfg: &ExperimentConfig, out: &Path) -> Result<Outcome, Error> {
    let family = DataFamily::standard();
    let p = cfg.params;
    let grid = Grid::new(cfg.grid_for(&p, &family.h, 0.0)?);
    let data = family.build_initial_data(&p, &grid)?;
    let hom = NormFlavor::Homogeneous;
    let mut named = Vec::new();
    for s in orders(cfg) {
        named.push((format!("a0_Hdot{s}"), sobolev_norm(&data.a0, s, hom)?));
    }
    named.push(("b0_H_beta-1".into(), sobolev_norm(&data.b0, p.beta - 1.0, NormFlavor::Inhomogeneous)?));
    named.push(("u0_L2".into(), sobolev_norm_vector(&data.u0_spectral, 0.0, hom)?));
    named.push(("u0_C1".into(), sup_norm_vector(&data.u0, 1)?));
    named.push(("u0_mismatch".into(), data.velocity_mismatch()?));
    named.push(("energy".into(), energy_functional(&data.a0, &data.b0)?));
    println!("initial data on n = {}, L = {}", grid.n(), grid.spec().half_width());
    one_row(&out.join("ic_norms.csv"), 0.0, named)?;
    write_snapshot(&snap(&grid, 0.0, &[&data.a0, &data.b0])?, &out.join("ic.bin"))?;
    Ok(Outcome::Done)
}

fn approx(cfg: &ExperimentConfig, out: &Path, time: Option<f64>) -> Result<Outcome, Error> {
    let family = DataFamily::standard();
    let p = cfg.params;
    let t = time.unwrap_or_else(|| tstar(&p));
    let grid = Grid::new(cfg.grid_for(&p, &family.h, t)?);
    let abar = family.eval_abar(&p, &grid, t, Shear::Exact)?.forward()?;
    let hom = NormFlavor::Homogeneous;
    let mut named = Vec::new();
    for s in orders(cfg) {
        named.push((format!("abar_Hdot{s}"), sobolev_norm(&abar, s, hom)?));
    }
    named.push(("abar_L2".into(), l2_norm(&abar)?));
    named.push(("orthogonality".into(), orthogonality_ratio_of(&abar)?));
    if t <= tstar(&p) {
        let ubar = family.eval_ubar(&p, &grid, t)?;
        let u0 = perp_gradient(&family.sample_b0(&p, &grid).forward()?)?;
        let s = p.beta - 2.0;
        named.push(("ubar_H_beta-2".into(), sobolev_norm_vector(&ubar.u, s, NormFlavor::Inhomogeneous)?));
        named.push(("u0_H_beta-2".into(), sobolev_norm_vector(&u0, s, NormFlavor::Inhomogeneous)?));
    }
    println!("approximate solution at t = {t} on n = {}", grid.n());
    one_row(&out.join("approx_norms.csv"), t, named)?;
    write_snapshot(&snap(&grid, t, &[&abar])?, &out.join("approx.bin"))?;
    Ok(Outcome::Done)
}

fn run(cfg: &ExperimentConfig, out: &Path) -> Result<Outcome, Error> {
    let report = inflation_experiment(cfg)?;
    let rows: Vec<Vec<String>> = report.records().into_iter().map(|(k, v)| vec![k, v]).collect();
    write_table(&out.join("report.csv"), &["key", "value"], &rows)?;
    write_series(&report.series, &out.join("series.csv"))?;
    write_snapshot(&report.snapshots[0], &out.join("snapshot_t0.bin"))?;
    write_snapshot(&report.snapshots[1], &out.join("snapshot_tend.bin"))?;
    for row in &rows {
        println!("  {:<12} {}", row[0], row[1]);
    }
    Ok(match report.status {
        RunStatus::Completed => Outcome::Done,
        RunStatus::Unstable { .. } => Outcome::Unstable,
    })
}

fn sweep(cfg: &ExperimentConfig, out: &Path) -> Result<Outcome, Error> {
    let reports = scaling_sweep(cfg)?;
    let mut fits = Vec::new();
    let mut points = Vec::new();
    for r in &reports {
        let (slope, residual) = r.fit.as_ref().map_or((f64::NAN, f64::NAN), |f| (f.slope, f.residual));
        println!(
            "  {:<8} {:<22} slope {:>8.4} expected {:>7.3} ± {:<5} {}",
            r.axis.name(),
            r.quantity,
            slope,
            r.expected_slope,
            r.tolerance,
            r.status
        );
        fits.push(vec![
            r.axis.name().to_string(),
            r.quantity.clone(),
            format_f64(slope),
            format_f64(r.expected_slope),
            format_f64(r.tolerance),
            format_f64(residual),
            r.status.to_string(),
        ]);
        for (x, y) in r.abscissae.iter().zip(&r.ordinates) {
            points.push(vec![r.axis.name().to_string(), r.quantity.clone(), format_f64(*x), format_f64(*y)]);
        }
        for e in &r.point_errors {
            eprintln!("  point skipped: {e}");
        }
    }
    write_table(
        &out.join("fits.csv"),
        &["axis", "quantity", "slope", "expected", "tolerance", "residual", "status"],
        &fits,
    )?;
    write_table(&out.join("sweep_points.csv"), &["axis", "quantity", "x", "value"], &points)?;
    Ok(Outcome::Done)
}

fn converge(cfg: &ExperimentConfig, out: &Path) -> Result<Outcome, Error> {
    let r = convergence_study(cfg)?;
    let mut rows = Vec::new();
    for (k, run) in r.runs.iter().enumerate() {
        let h = &run.headline;
        let diff = r.differences.get(k).copied().unwrap_or(f64::NAN);
        println!(
            "  n {:>5}  R_a {:.5}  R_abar {:.5}  max_b {:.5}  err_rel {:.5}  diff_to_next {:.3e}",
            run.n, h.r_a, h.r_abar, h.max_b, h.err_rel, diff
        );
        rows.push(vec![
            run.n.to_string(),
            format_f64(h.r_a),
            format_f64(h.r_abar),
            format_f64(h.max_b),
            format_f64(h.err_rel),
            format_f64(diff),
            run.steps.to_string(),
            if run.status.is_completed() { "completed".into() } else { "unstable".into() },
        ]);
    }
    println!("  citable: {}", r.citable);
    write_table(
        &out.join("convergence.csv"),
        &["grid_n", "R_a", "R_abar", "max_b", "err_rel", "diff_to_next", "steps", "status"],
        &rows,
    )?;
    Ok(if r.runs.iter().all(|x| x.status.is_completed()) { Outcome::Done } else { Outcome::Unstable })
}

fn check() -> Result<Outcome, Error> {
    let results = self_check();
    for r in &results {
        println!("{:<12} {}  {}", r.suite, if r.passed { "pass" } else { "FAIL" }, r.detail);
    }
    if results.iter().all(|r| r.passed) {
        Ok(Outcome::Done)
    } else {
        Err(Error::Degenerate("self-check failed".into()))
    }
}

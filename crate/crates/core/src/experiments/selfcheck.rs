use std::f64::consts::PI;

use crate::diagnostics::{fit_power_law, NormSeries};
use crate::error::Result;
use crate::io::{series_from_reader, series_to_writer, Snapshot};
use crate::profiles::resolution::choose_grid;
use crate::profiles::{make_g, make_h, tstar, DataFamily, ModelParams, Shear};
use crate::solver::{Solver, SolverState, StepControl};
use crate::spectral::{
    divergence, fractional_laplacian, heat_propagator, l2_norm, perp_gradient, sobolev_norm, Field,
    Grid, GridSpec, NormFlavor,
};

/// Outcome of one invariant suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(suite: &'static str, run: impl FnOnce() -> Result<Vec<(String, bool)>>) -> CheckOutcome {
    match run() {
        Err(e) => CheckOutcome { suite, passed: false, detail: format!("error: {e}") },
        Ok(items) => {
            let failed: Vec<&str> = items.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
            let detail = if failed.is_empty() {
                format!("{} checks", items.len())
            } else {
                format!("failed: {}", failed.join(", "))
            };
            CheckOutcome { suite, passed: failed.is_empty(), detail }
        }
    }
}

fn spectral() -> Result<Vec<(String, bool)>> {
    let g = Grid::new(GridSpec::<f64>::with_default_width(64)?);
    let f = Field::from_fn(&g, |x, y| (x.sin() * (2.0 * y).cos()).exp() - 1.0);
    let l2 = l2_norm(&f)?;
    let parseval = (sobolev_norm(&f.forward()?, 0.0, NormFlavor::Homogeneous)? - l2).abs() / l2;
    let wave = Field::from_fn(&g, |x, y| (3.0 * x + 4.0 * y).cos());
    let lap = fractional_laplacian(&wave, 0.25, 1.0)?;
    let eig = lap
        .values()?
        .iter()
        .zip(wave.values()?.iter())
        .map(|(l, w)| (l - 5f64.sqrt() * w).abs())
        .fold(0.0, f64::max);
    let div = divergence(&perp_gradient(&f)?)?;
    let div_max = div.values()?.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(vec![
        ("parseval".into(), parseval < 1e-12),
        ("plane-wave eigenvalue".into(), eig < 1e-12),
        ("div perp-grad".into(), div_max < 1e-11),
    ])
}

fn profiles() -> Result<Vec<(String, bool)>> {
    let g = make_g();
    let h = make_h()?;
    let p = ModelParams::headline().with(4.0, 2, 0.5);
    let t = tstar(&p);
    let grid = Grid::new(choose_grid(&p, &h, t, None)?);
    let family = DataFamily::new(g, h);
    let l0 = l2_norm(&family.sample_abar(&p, &grid, 0.0, Shear::Exact))?;
    let l1 = l2_norm(&family.sample_abar(&p, &grid, t, Shear::Exact))?;
    Ok(vec![
        ("g peak".into(), (g.eval(2.5f64) - 1.0).abs() < 1e-14),
        ("g support".into(), g.eval(2.0f64) == 0.0 && g.eval(3.0f64) == 0.0),
        ("h increasing".into(), h.eval_d1(2.5f64) > 0.0),
        ("abar L2 conserved".into(), ((l1 - l0) / l0).abs() < 1e-8),
    ])
}

fn solver() -> Result<Vec<(String, bool)>> {
    let g = Grid::new(GridSpec::<f64>::with_default_width(64)?);
    let a0 = Field::from_fn(&g, |x, y| 0.1 * (-3.0 * (x * x + y * y)).exp());
    let ctrl = StepControl::default().with_dt_max(1e-3);
    let mut s = Solver::new(&g, 0.5, 1.0, 1.0, ctrl)?;
    let (end, status) = s.evolve(&SolverState::new(&a0, &Field::zeros(&g))?, 0.02, 100, |_| Ok(()))?;
    let exact = heat_propagator(&a0, 0.5, 1.0, 0.02)?;
    let err = l2_norm(&end.a.sub(&exact)?)? / l2_norm(&exact)?;
    let z = SolverState::zeros(&g);
    let (zend, _) = s.evolve(&z, 0.01, 100, |_| Ok(()))?;
    Ok(vec![
        ("completed".into(), status.is_completed()),
        ("radial heat decay".into(), err < 1e-6),
        ("zero fixed point".into(), zend.a_hat().iter().chain(zend.b_hat()).all(|c| c.norm() == 0.0)),
    ])
}

fn diagnostics() -> Result<Vec<(String, bool)>> {
    let x = [8.0, 16.0, 32.0];
    let y: Vec<f64> = x.iter().map(|v: &f64| 2.0 * v.powf(-1.2)).collect();
    let f = fit_power_law(&x, &y)?;
    let scaled: Vec<f64> = y.iter().map(|v| v * 7.0).collect();
    let g = fit_power_law(&x, &scaled)?;
    Ok(vec![
        ("exact slope".into(), (f.slope + 1.2).abs() < 1e-12),
        ("scale invariance".into(), (f.slope - g.slope).abs() < 1e-12),
    ])
}

fn io() -> Result<Vec<(String, bool)>> {
    let snap = Snapshot { grid_n: 16, half_width: PI, time: 0.1, fields: vec![(0..256).map(|k| (k as f64).sin() / 3.0).collect()] };
    let back = Snapshot::from_bytes(&snap.to_bytes()?, "memory")?;
    let mut series = NormSeries::new(vec!["x".into()]);
    for k in 0..10 {
        series.push(k as f64 / 7.0, vec![(k as f64).exp() / 3.0])?;
    }
    let mut buf = Vec::new();
    series_to_writer(&series, &mut buf)?;
    let read = series_from_reader(buf.as_slice(), "memory")?;
    Ok(vec![("snapshot roundtrip".into(), back == snap), ("csv roundtrip".into(), read == series)])
}

/// Runs every invariant suite; each takes well under a second.
pub fn self_check() -> Vec<CheckOutcome> {
    vec![
        outcome("spectral", spectral),
        outcome("profiles", profiles),
        outcome("solver", solver),
        outcome("diagnostics", diagnostics),
        outcome("io", io),
    ]
}

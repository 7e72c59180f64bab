use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profiles::DataFamily;
use crate::solver::RunStatus;
use crate::spectral::{l2_norm, Field, Grid, GridSpec};

use super::config::ExperimentConfig;
use super::inflation::{run_on_grid, Headline};

/// Largest relative change of a headline ratio between the two finest grids
/// for the run to be citable.
pub const CITABLE_CHANGE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRun {
    pub n: usize,
    pub headline: Headline,
    pub status: RunStatus,
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub t_end: f64,
    pub runs: Vec<ConvergenceRun>,
    /// Relative L² gap of `a` at `t_end` between each grid and the next finer one.
    pub differences: Vec<f64>,
    /// Relative change of `(R_a, R_abar, max_b, err_rel)` between the two finest grids.
    pub ratio_changes: [f64; 4],
    pub citable: bool,
}

impl ConvergenceReport {
    /// Ratio by which each refinement shrank the successive difference.
    pub fn contraction(&self) -> Vec<f64> {
        self.differences.windows(2).map(|w| w[0] / w[1]).collect()
    }
}

/// Copies the coefficients of `f` onto the finer grid `fine` (same box),
/// dropping the coarse Nyquist modes.
pub fn embed(f: &Field<f64>, fine: &Arc<Grid<f64>>) -> Result<Field<f64>> {
    let cs = *f.grid().spec();
    let fs = *fine.spec();
    if fs.n() < cs.n() || fs.half_width() != cs.half_width() {
        return Err(Error::GridMismatch(format!(
            "cannot embed n = {} into n = {} with a different box or fewer points",
            cs.n(),
            fs.n()
        )));
    }
    let (nc, nf) = (cs.n(), fs.n());
    let scale = (nf as f64 / nc as f64).powi(2);
    let c = f.coeffs()?;
    let mut out = vec![crate::Complex::new(0.0, 0.0); nf * nf];
    let half = (nc / 2) as isize;
    let wrap = |s: isize| s.rem_euclid(nf as isize) as usize;
    for i in 0..nc {
        let si = cs.signed_index(i);
        if si.abs() == half {
            continue;
        }
        for j in 0..nc {
            let sj = cs.signed_index(j);
            if sj.abs() == half {
                continue;
            }
            out[wrap(si) * nf + wrap(sj)] = c[i * nc + j] * scale;
        }
    }
    Field::from_spectral(fine, out)
}

/// `‖P f - g‖_2 / ‖g‖_2` with `f` embedded into the grid of `g`.
pub fn relative_difference(f: &Field<f64>, g: &Field<f64>) -> Result<f64> {
    let e = embed(f, g.grid())?;
    Ok(l2_norm(&e.sub(g)?)? / l2_norm(g)?)
}

/// Runs the inflation setup of `cfg` to its end time on the base grid and on
/// two successive doublings, without resolution checks, and compares the
/// trajectories and headline ratios.
pub fn convergence_study(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    convergence_with(cfg, &DataFamily::standard(), 3)
}

pub fn convergence_with(cfg: &ExperimentConfig, family: &DataFamily, levels: usize) -> Result<ConvergenceReport> {
    if levels < 3 {
        return Err(Error::param("levels", format!("{levels}: base grid plus two refinements needed")));
    }
    let errs = cfg.range_violations();
    if !errs.is_empty() {
        return Err(Error::Config(errs));
    }
    let p = cfg.params;
    let t_end = cfg.t_end_value();
    let base = match cfg.grid_n {
        Some(n) => {
            let l = cfg.half_width.unwrap_or_else(|| crate::profiles::resolution::data_half_width(p.lambda));
            GridSpec::new(n, l)?
        }
        None => cfg.grid_for(&p, &family.h, t_end)?,
    };
    let mut runs = Vec::new();
    let mut finals = Vec::new();
    for level in 0..levels {
        let spec = GridSpec::new(base.n() << level, base.half_width())?;
        let r = run_on_grid(cfg, family, spec)?;
        runs.push(ConvergenceRun { n: spec.n(), headline: r.headline, status: r.status.clone(), steps: r.steps });
        finals.push(r.final_state.a);
    }
    let differences = finals
        .windows(2)
        .map(|w| relative_difference(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    let (x, y) = (&runs[levels - 2].headline, &runs[levels - 1].headline);
    let change = |a: f64, b: f64| ((a - b) / b).abs();
    let ratio_changes = [
        change(x.r_a, y.r_a),
        change(x.r_abar, y.r_abar),
        change(x.max_b, y.max_b),
        change(x.err_rel, y.err_rel),
    ];
    let citable = runs.iter().all(|r| r.status.is_completed())
        && ratio_changes.iter().all(|c| *c < CITABLE_CHANGE);
    Ok(ConvergenceReport { t_end, runs, differences, ratio_changes, citable })
}

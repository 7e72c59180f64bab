use std::sync::Arc;

use crate::diagnostics::{energy_functional, error_field, NormSeries, COL_A_L2, COL_ENERGY};
use crate::error::{Error, Result};
use crate::io::Snapshot;
use crate::profiles::resolution::{sheared_min_n, static_min_n};
use crate::profiles::{boundary_leakage, tstar, DataFamily, Shear, Window};
use crate::solver::{RunStatus, Solver, SolverState};
use crate::spectral::{l2_norm, sobolev_norm, sup_norm, Field, Grid, GridSpec, NormFlavor};

use super::config::ExperimentConfig;

pub const COL_A_BETA: &str = "a_Hdot_beta";
pub const COL_ABAR_BETA: &str = "abar_Hdot_beta";
pub const COL_ERR_BETA: &str = "A_Hdot_beta";
pub const COL_ERR_1: &str = "A_Hdot1";
pub const COL_ABAR_1: &str = "abar_Hdot1";
pub const COL_B: &str = "b_H_beta-1";
pub const COL_ABAR_L2: &str = "abar_L2";
pub const COL_A_SUP: &str = "a_sup";
pub const COL_B_SUP: &str = "b_sup";

/// How the run's grid was validated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCheck {
    pub spec: GridSpec<f64>,
    /// Smallest `n` allowed by the static and sheared rules over the run.
    pub required_n: usize,
}

/// The ratios of the inflation run at its last recorded time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Headline {
    /// `‖a(t)‖_Ḣ^β / ‖a(0)‖_Ḣ^β`.
    pub r_a: f64,
    /// Same for `ā`.
    pub r_abar: f64,
    /// `max_t ‖b(t)‖_H^(β-1) / ‖b(0)‖_H^(β-1)`.
    pub max_b: f64,
    /// `‖A(t)‖_Ḣ¹ / ‖ā(t)‖_Ḣ¹` with `A = a - ā`.
    pub err_rel: f64,
}

impl Headline {
    pub fn from_series(series: &NormSeries) -> Result<Self> {
        let col = |name: &str| {
            series.column(name).ok_or_else(|| Error::param("series", format!("missing column {name}")))
        };
        let (a, abar, b, e1, ab1) = (col(COL_A_BETA)?, col(COL_ABAR_BETA)?, col(COL_B)?, col(COL_ERR_1)?, col(COL_ABAR_1)?);
        let last = series.len().checked_sub(1).ok_or_else(|| Error::param("series", "no samples"))?;
        let b_max = b.iter().cloned().fold(0.0, f64::max);
        Ok(Self {
            r_a: a[last] / a[0],
            r_abar: abar[last] / abar[0],
            max_b: b_max / b[0],
            err_rel: e1[last] / ab1[last],
        })
    }

    pub fn is_finite(&self) -> bool {
        [self.r_a, self.r_abar, self.max_b, self.err_rel].iter().all(|v| v.is_finite())
    }
}

#[derive(Clone, Debug)]
pub struct InflationReport {
    pub config: ExperimentConfig,
    pub t_star: f64,
    pub t_end: f64,
    pub grid: GridCheck,
    pub series: NormSeries,
    pub headline: Headline,
    pub status: RunStatus,
    pub steps: u64,
    /// Largest `|a|` outside the data annulus at the last time, relative to `max |a|`.
    pub leakage: f64,
    pub final_state: SolverState<f64>,
    /// Fields `(a, b, A)` at `t = 0` and at the last time.
    pub snapshots: [Snapshot; 2],
}

impl InflationReport {
    /// Key/value summary in a fixed order.
    pub fn records(&self) -> Vec<(String, String)> {
        use crate::io::format_f64;
        let p = &self.config.params;
        let h = &self.headline;
        let status = match &self.status {
            RunStatus::Completed => "completed".to_string(),
            RunStatus::Unstable { reason } => format!("unstable: {reason}"),
        };
        let mut out: Vec<(String, String)> = vec![
            ("alpha".into(), format_f64(p.alpha)),
            ("beta".into(), format_f64(p.beta)),
            ("mu".into(), format_f64(p.mu)),
            ("nu".into(), format_f64(p.nu)),
            ("epsilon".into(), format_f64(p.eps)),
            ("lambda".into(), format_f64(p.lambda)),
            ("n_osc".into(), p.n_osc.to_string()),
            ("grid_n".into(), self.grid.spec.n().to_string()),
            ("half_width".into(), format_f64(self.grid.spec.half_width())),
            ("required_n".into(), self.grid.required_n.to_string()),
            ("t_star".into(), format_f64(self.t_star)),
            ("t_end".into(), format_f64(self.t_end)),
            ("t_last".into(), format_f64(self.series.times().last().copied().unwrap_or(0.0))),
            ("steps".into(), self.steps.to_string()),
            ("status".into(), status),
            ("R_a".into(), format_f64(h.r_a)),
            ("R_abar".into(), format_f64(h.r_abar)),
            ("max_b".into(), format_f64(h.max_b)),
            ("err_rel".into(), format_f64(h.err_rel)),
            ("leakage".into(), format_f64(self.leakage)),
        ];
        if !self.config.seed_note.is_empty() {
            out.push(("seed_note".into(), self.config.seed_note.clone()));
        }
        out
    }
}

fn s_label(s: f64) -> String {
    format!("{s}")
}

/// Column names of the inflation series for the tracked orders `s_list`.
pub fn series_columns(s_list: &[f64]) -> Vec<String> {
    let mut cols: Vec<String> = [
        COL_A_BETA, COL_ABAR_BETA, COL_ERR_BETA, COL_ERR_1, COL_ABAR_1, COL_B, COL_ENERGY, COL_A_L2,
        COL_ABAR_L2, COL_A_SUP, COL_B_SUP,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for &s in s_list {
        cols.push(format!("a_Hdot{}", s_label(s)));
        cols.push(format!("A_Hdot{}", s_label(s)));
    }
    cols
}

struct Observation {
    values: Vec<f64>,
    err: Field<f64>,
}

fn observe(
    state: &SolverState<f64>,
    abar: &Field<f64>,
    beta: f64,
    s_list: &[f64],
) -> Result<Observation> {
    let hom = NormFlavor::Homogeneous;
    let a = &state.a;
    let b = &state.b;
    let err = error_field(a, abar)?;
    let abar_hat = abar.forward()?;
    let mut v = vec![
        sobolev_norm(a, beta, hom)?,
        sobolev_norm(&abar_hat, beta, hom)?,
        sobolev_norm(&err, beta, hom)?,
        sobolev_norm(&err, 1.0, hom)?,
        sobolev_norm(&abar_hat, 1.0, hom)?,
        sobolev_norm(b, beta - 1.0, NormFlavor::Inhomogeneous)?,
        energy_functional(a, b)?,
        l2_norm(a)?,
        l2_norm(abar)?,
        sup_norm(a, 0)?,
        sup_norm(b, 0)?,
    ];
    for &s in s_list {
        v.push(sobolev_norm(a, s, hom)?);
        v.push(sobolev_norm(&err, s, hom)?);
    }
    Ok(Observation { values: v, err })
}

fn snapshot(spec: &GridSpec<f64>, time: f64, fields: [&Field<f64>; 3]) -> Result<Snapshot> {
    Ok(Snapshot {
        grid_n: spec.n() as u32,
        half_width: spec.half_width(),
        time,
        fields: fields.iter().map(|f| f.values().map(|v| v.into_owned())).collect::<Result<_>>()?,
    })
}

/// Evolves the oscillating data to `t_end` (by default the inflation time),
/// tracking `a`, the transported approximation `ā` on the same time grid, and
/// the error `A = a - ā`.
pub fn inflation_experiment(cfg: &ExperimentConfig) -> Result<InflationReport> {
    inflation_with(cfg, &DataFamily::standard())
}

pub fn inflation_with(cfg: &ExperimentConfig, family: &DataFamily) -> Result<InflationReport> {
    cfg.validate(&family.h)?;
    let spec = cfg.grid_for(&cfg.params, &family.h, cfg.t_end_value())?;
    run_on_grid(cfg, family, spec)
}

/// The inflation run on a given grid, without the resolution checks.
pub fn run_on_grid(cfg: &ExperimentConfig, family: &DataFamily, spec: GridSpec<f64>) -> Result<InflationReport> {
    let p = cfg.params;
    p.validate(Window::Strict)?;
    let t_end = cfg.t_end_value();
    let l = spec.half_width();
    let required_n = static_min_n(&p, l).max(sheared_min_n(&p, &family.h, t_end, l));
    let grid = Grid::new(spec);
    let a0 = family.sample_abar(&p, &grid, 0.0, Shear::Exact).forward()?;
    let b0 = family.sample_b0(&p, &grid).forward()?;
    let mut solver = Solver::from_params(&p, &grid, cfg.control(t_end))?;
    let state0 = SolverState::new(&a0, &b0)?;

    let mut series = NormSeries::new(series_columns(&cfg.s_list));
    let mut last_err: Option<Field<f64>> = None;
    let (last, status) = solver.evolve(&state0, t_end, cfg.observer_stride, |st| {
        let abar = abar_at(family, &p, &grid, st.time);
        let obs = observe(st, &abar, p.beta, &cfg.s_list)?;
        series.push(st.time, obs.values)?;
        last_err = Some(obs.err);
        Ok(())
    })?;
    if !status.is_completed() {
        series.truncated = true;
    }
    let headline = Headline::from_series(&series)?;
    let zero = Field::zeros(&grid);
    let err = last_err.unwrap_or_else(|| zero.clone());
    let first = snapshot(&spec, 0.0, [&a0, &b0, &zero])?;
    let final_snap = snapshot(&spec, last.time, [&last.a, &last.b, &err])?;
    Ok(InflationReport {
        config: cfg.clone(),
        t_star: tstar(&p),
        t_end,
        grid: GridCheck { spec, required_n },
        leakage: boundary_leakage(&last.a, p.lambda)?,
        series,
        headline,
        status,
        steps: last.step_count,
        final_state: last,
        snapshots: [first, final_snap],
    })
}

fn abar_at(family: &DataFamily, p: &crate::profiles::ModelParams, grid: &Arc<Grid<f64>>, t: f64) -> Field<f64> {
    family.sample_abar(p, grid, t, Shear::Exact)
}

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::profiles::resolution::{check_box, check_resolution, choose_grid};
use crate::profiles::{tstar, BumpProfile, ModelParams, Window};
use crate::solver::StepControl;
use crate::spectral::{GridSpec, MAX_ORDER, MIN_ORDER};

/// End time of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TEnd {
    /// The inflation time `ε^-2 λ^(β-4)` of the run's parameters.
    TStar,
    Explicit(f64),
}

/// Optional sweep values along each parameter axis.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepAxes {
    pub lambda: Option<Vec<f64>>,
    pub n_osc: Option<Vec<u32>>,
    pub epsilon: Option<Vec<f64>>,
}

impl SweepAxes {
    pub fn is_empty(&self) -> bool {
        self.lambda.is_none() && self.n_osc.is_none() && self.epsilon.is_none()
    }

    /// Each present axis as `(key, values)`.
    pub fn present(&self) -> Vec<(&'static str, Vec<f64>)> {
        let mut out = Vec::new();
        if let Some(v) = &self.lambda {
            out.push(("sweep_lambda", v.clone()));
        }
        if let Some(v) = &self.n_osc {
            out.push(("sweep_n_osc", v.iter().map(|&n| n as f64).collect()));
        }
        if let Some(v) = &self.epsilon {
            out.push(("sweep_epsilon", v.clone()));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub params: ModelParams,
    /// `None` picks the smallest FFT-friendly grid passing the resolution rules.
    pub grid_n: Option<usize>,
    /// `None` uses the data-following box `4.5/λ`.
    pub half_width: Option<f64>,
    /// Step control; its `dt_max` is replaced by [`ExperimentConfig::control`].
    pub ctrl: StepControl<f64>,
    /// `None` means `t_end / 16`.
    pub dt_max: Option<f64>,
    pub t_end: TEnd,
    /// Orders of the extra homogeneous norms tracked for `a` and `A`.
    pub s_list: Vec<f64>,
    pub observer_stride: usize,
    pub sweep: SweepAxes,
    pub out_dir: Option<PathBuf>,
    /// Free text copied into reports.
    pub seed_note: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::headline(),
            grid_n: None,
            half_width: None,
            ctrl: StepControl::default(),
            dt_max: None,
            t_end: TEnd::TStar,
            s_list: vec![0.0, 1.0, 2.0, 3.0],
            observer_stride: 100,
            sweep: SweepAxes::default(),
            out_dir: None,
            seed_note: String::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn with_params(&self, params: ModelParams) -> Self {
        Self { params, ..self.clone() }
    }

    pub fn t_end_for(&self, p: &ModelParams) -> f64 {
        match self.t_end {
            TEnd::TStar => tstar(p),
            TEnd::Explicit(t) => t,
        }
    }

    pub fn t_end_value(&self) -> f64 {
        self.t_end_for(&self.params)
    }

    pub fn control(&self, t_end: f64) -> StepControl<f64> {
        self.ctrl.with_dt_max(self.dt_max.unwrap_or(t_end / 16.0))
    }

    /// Grid for parameters `p` resolving the data up to `t`.
    pub fn grid_for(&self, p: &ModelParams, h: &BumpProfile, t: f64) -> Result<GridSpec<f64>> {
        match self.grid_n {
            None => choose_grid(p, h, t, self.half_width),
            Some(n) => {
                let l = self.half_width.unwrap_or_else(|| crate::profiles::resolution::data_half_width(p.lambda));
                let spec = GridSpec::new(n, l)?;
                check_box(p, &spec)?;
                check_resolution(p, h, &spec, t)?;
                Ok(spec)
            }
        }
    }

    /// Every sweep point as full parameters, axis by axis.
    pub fn sweep_points(&self) -> Vec<(&'static str, ModelParams)> {
        let p = self.params;
        let mut out = Vec::new();
        if let Some(v) = &self.sweep.lambda {
            out.extend(v.iter().map(|&l| ("lambda", p.with(l, p.n_osc, p.eps))));
        }
        if let Some(v) = &self.sweep.n_osc {
            out.extend(v.iter().map(|&n| ("n_osc", p.with(p.lambda, n, p.eps))));
        }
        if let Some(v) = &self.sweep.epsilon {
            out.extend(v.iter().map(|&e| ("epsilon", p.with(p.lambda, p.n_osc, e))));
        }
        out
    }

    /// Every violated constraint, each naming its key.
    pub fn violations(&self, h: &BumpProfile) -> Vec<String> {
        let mut out = self.range_violations();
        if !out.is_empty() {
            return out;
        }
        let mut points = vec![("base", self.params)];
        points.extend(self.sweep_points());
        for (axis, p) in points {
            if let Err(e) = self.grid_for(&p, h, self.t_end_for(&p)) {
                let msg = match e {
                    Error::Resolution(m) => m,
                    other => other.to_string(),
                };
                let tag = if axis == "base" { String::new() } else { format!("sweep point {axis} ") };
                out.push(format!("{tag}{msg}"));
            }
        }
        out
    }

    /// Violations of the value ranges, leaving out the resolution rules.
    pub fn range_violations(&self) -> Vec<String> {
        let mut out = self.params.violations(Window::Strict);
        out.extend(self.ctrl.violations().into_iter().filter(|v| !v.starts_with("dt_max")));
        if let Some(dt) = self.dt_max {
            if !(dt > 0.0 && dt.is_finite()) {
                out.push(format!("dt_max = {dt}: must be positive and finite"));
            }
        }
        if let TEnd::Explicit(t) = self.t_end {
            if !(t > 0.0 && t.is_finite()) {
                out.push(format!("t_end = {t}: must be positive and finite"));
            }
        }
        for &s in &self.s_list {
            if !(s >= MIN_ORDER && s <= MAX_ORDER) {
                out.push(format!("s_list entry {s}: must lie in [{MIN_ORDER}, {MAX_ORDER}]"));
            }
        }
        if self.observer_stride == 0 {
            out.push("observer_stride = 0: must be a positive integer".into());
        }
        if let Some(n) = self.grid_n {
            if n < GridSpec::<f64>::MIN_N || n % 2 == 1 {
                out.push(format!("grid_n = {n}: must be even and >= {}", GridSpec::<f64>::MIN_N));
            }
        }
        if let Some(l) = self.half_width {
            if !(l > 0.0 && l.is_finite()) {
                out.push(format!("half_width = {l}: must be positive and finite"));
            }
        }
        for (key, values) in self.sweep.present() {
            if values.len() < 3 {
                out.push(format!("{key}: {} points, at least 3 needed", values.len()));
            } else {
                let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = values.iter().cloned().fold(0.0, f64::max);
                let octaves = if key == "sweep_epsilon" { 1 } else { 2 };
                if !(lo > 0.0 && hi / lo >= f64::from(1 << octaves) * (1.0 - 1e-12)) {
                    out.push(format!("{key}: values must be positive and span at least {octaves} octave(s)"));
                }
            }
        }
        out
    }

    pub fn validate(&self, h: &BumpProfile) -> Result<()> {
        let v = self.violations(h);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(v))
        }
    }
}

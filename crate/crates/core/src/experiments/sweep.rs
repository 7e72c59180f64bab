use rayon::prelude::*;

use crate::diagnostics::{fit_power_law, FitStatus, PowerLawFit};
use crate::error::{Error, Result};
use crate::profiles::{orthogonality_ratio_of, tstar, DataFamily, ModelParams, Shear};
use crate::spectral::{sobolev_norm, sobolev_norm_vector, sup_norm_vector, Grid, NormFlavor};

use super::config::ExperimentConfig;

/// Environment variable holding the number of sweep workers.
pub const WORKERS_ENV: &str = "EMHD25D_WORKERS";

/// Worker count from [`WORKERS_ENV`], defaulting to the available processors.
pub fn worker_count() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Config(vec![format!("{WORKERS_ENV} = {v:?}: must be a positive integer")])),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Lambda,
    NOsc,
    Epsilon,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Lambda => "lambda",
            Axis::NOsc => "n_osc",
            Axis::Epsilon => "epsilon",
        }
    }

    fn coordinate(self, p: &ModelParams) -> f64 {
        match self {
            Axis::Lambda => p.lambda,
            Axis::NOsc => p.n_osc as f64,
            Axis::Epsilon => p.eps,
        }
    }
}

/// A measured quantity of the data family.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Quantity {
    /// `‖a0‖_Ḣ^s`.
    A0(f64),
    /// `‖u0‖_Ḣ^s`.
    U0(f64),
    /// `‖u0‖_C¹`.
    U0C1,
    /// `‖ā(t*)‖_Ḣ^β`.
    AbarTstar,
    /// Hall-term cancellation ratio of `ā(t*)`.
    Orthogonality,
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::A0(s) => format!("a0_Hdot{s}"),
            Quantity::U0(s) => format!("u0_Hdot{s}"),
            Quantity::U0C1 => "u0_C1".into(),
            Quantity::AbarTstar => "abar_tstar_Hdot_beta".into(),
            Quantity::Orthogonality => "orthogonality_tstar".into(),
        }
    }

    /// Predicted log-log slope and its tolerance, or `None` when the quantity
    /// is not tracked along `axis`.
    pub fn expected(&self, axis: Axis, beta: f64) -> Option<(f64, f64)> {
        let order_tol = |s: f64| if s == beta { 0.1 } else { 0.15 };
        match (self, axis) {
            (Quantity::A0(s), Axis::Lambda) => Some((s - beta, order_tol(*s))),
            (Quantity::A0(s), Axis::NOsc) => Some((s - beta, order_tol(*s))),
            (Quantity::A0(_), Axis::Epsilon) => Some((1.0, 0.1)),
            (Quantity::U0(s), Axis::Lambda) => Some((s + 2.0 - beta, 0.15)),
            (Quantity::U0(_), Axis::NOsc) => Some((0.0, 0.1)),
            (Quantity::U0(_), Axis::Epsilon) => Some((1.0, 0.1)),
            (Quantity::U0C1, Axis::Lambda) => Some((4.0 - beta, 0.1)),
            (Quantity::U0C1, Axis::NOsc) => Some((0.0, 0.1)),
            (Quantity::U0C1, Axis::Epsilon) => Some((1.0, 0.1)),
            (Quantity::AbarTstar, Axis::Lambda) => Some((0.0, 0.15)),
            (Quantity::AbarTstar, Axis::NOsc) => Some((0.0, 0.15)),
            (Quantity::AbarTstar, Axis::Epsilon) => Some((1.0 - beta, 0.3)),
            (Quantity::Orthogonality, Axis::NOsc) => Some((-1.0, 0.3)),
            (Quantity::Orthogonality, _) => None,
        }
    }
}

/// Fit of one quantity along one axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub axis: Axis,
    pub quantity: String,
    pub abscissae: Vec<f64>,
    pub ordinates: Vec<f64>,
    pub fit: Option<PowerLawFit>,
    pub expected_slope: f64,
    pub tolerance: f64,
    pub status: FitStatus,
    /// Sweep points that could not be measured, with the reason.
    pub point_errors: Vec<String>,
}

/// Quantities measured at every sweep point, in a fixed order.
pub fn sweep_quantities(orders: &[f64]) -> Vec<Quantity> {
    let mut q: Vec<Quantity> = orders.iter().map(|&s| Quantity::A0(s)).collect();
    q.extend(orders.iter().map(|&s| Quantity::U0(s)));
    q.extend([Quantity::U0C1, Quantity::AbarTstar, Quantity::Orthogonality]);
    q
}

/// Measures `quantities` for the data with parameters `p` on the grid the
/// configuration assigns to `p` at its inflation time.
pub fn measure_point(
    cfg: &ExperimentConfig,
    family: &DataFamily,
    p: &ModelParams,
    quantities: &[Quantity],
) -> Result<Vec<f64>> {
    let t_star = tstar(p);
    let spec = cfg.grid_for(p, &family.h, t_star)?;
    let grid = Grid::new(spec);
    let hom = NormFlavor::Homogeneous;
    let a0 = family.sample_abar(p, &grid, 0.0, Shear::Exact).forward()?;
    let u0 = family.sample_u0(p, &grid);
    let needs_abar = quantities.iter().any(|q| matches!(q, Quantity::AbarTstar | Quantity::Orthogonality));
    let abar = if needs_abar { Some(family.sample_abar(p, &grid, t_star, Shear::Exact).forward()?) } else { None };
    quantities
        .iter()
        .map(|q| match q {
            Quantity::A0(s) => sobolev_norm(&a0, *s, hom),
            Quantity::U0(s) => sobolev_norm_vector(&u0, *s, hom),
            Quantity::U0C1 => sup_norm_vector(&u0, 1),
            Quantity::AbarTstar => sobolev_norm(abar.as_ref().unwrap(), p.beta, hom),
            Quantity::Orthogonality => orthogonality_ratio_of(abar.as_ref().unwrap()),
        })
        .collect()
}

/// Measures the data family at every sweep point in parallel and fits a
/// power law per tracked quantity and axis. Records are sorted by axis then
/// quantity, and points by abscissa, whatever the execution order.
pub fn scaling_sweep(cfg: &ExperimentConfig) -> Result<Vec<ScalingReport>> {
    scaling_sweep_with(cfg, &DataFamily::standard(), worker_count()?)
}

pub fn scaling_sweep_with(cfg: &ExperimentConfig, family: &DataFamily, workers: usize) -> Result<Vec<ScalingReport>> {
    if cfg.sweep.is_empty() {
        return Err(Error::Config(vec!["no sweep axis given".into()]));
    }
    let errs: Vec<String> = cfg
        .violations(&family.h)
        .into_iter()
        .filter(|v| !v.starts_with("sweep point"))
        .collect();
    if !errs.is_empty() {
        return Err(Error::Config(errs));
    }
    let beta = cfg.params.beta;
    let mut orders = cfg.s_list.clone();
    if !orders.contains(&beta) {
        orders.push(beta);
    }
    let quantities = sweep_quantities(&orders);

    let points: Vec<(Axis, ModelParams)> = cfg
        .sweep_points()
        .into_iter()
        .map(|(name, p)| {
            let axis = match name {
                "lambda" => Axis::Lambda,
                "n_osc" => Axis::NOsc,
                _ => Axis::Epsilon,
            };
            (axis, p)
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::param("workers", e.to_string()))?;
    let measured: Vec<Result<Vec<f64>>> = pool.install(|| {
        points
            .par_iter()
            .map(|(axis, p)| {
                let wanted: Vec<Quantity> =
                    quantities.iter().copied().filter(|q| q.expected(*axis, beta).is_some()).collect();
                let vals = measure_point(cfg, family, p, &wanted)?;
                let mut full = vec![f64::NAN; quantities.len()];
                let mut it = vals.into_iter();
                for (k, q) in quantities.iter().enumerate() {
                    if q.expected(*axis, beta).is_some() {
                        full[k] = it.next().unwrap();
                    }
                }
                Ok(full)
            })
            .collect()
    });

    let mut reports = Vec::new();
    for axis in [Axis::Lambda, Axis::NOsc, Axis::Epsilon] {
        let mut here: Vec<(f64, &Result<Vec<f64>>)> = points
            .iter()
            .zip(&measured)
            .filter(|((a, _), _)| *a == axis)
            .map(|((_, p), m)| (axis.coordinate(p), m))
            .collect();
        if here.is_empty() {
            continue;
        }
        here.sort_by(|x, y| x.0.total_cmp(&y.0));
        let point_errors: Vec<String> = here
            .iter()
            .filter_map(|(x, m)| m.as_ref().err().map(|e| format!("{} = {x}: {e}", axis.name())))
            .collect();
        let good: Vec<(f64, &Vec<f64>)> = here.iter().filter_map(|(x, m)| m.as_ref().ok().map(|v| (*x, v))).collect();
        for (k, q) in quantities.iter().enumerate() {
            let Some((expected_slope, tolerance)) = q.expected(axis, beta) else { continue };
            let abscissae: Vec<f64> = good.iter().map(|(x, _)| *x).collect();
            let ordinates: Vec<f64> = good.iter().map(|(_, v)| v[k]).collect();
            let fit = fit_power_law(&abscissae, &ordinates).ok();
            let status = fit.as_ref().map_or(FitStatus::Inconclusive, |f| f.judge(expected_slope, tolerance));
            reports.push(ScalingReport {
                axis,
                quantity: q.label(),
                abscissae,
                ordinates,
                fit,
                expected_slope,
                tolerance,
                status,
                point_errors: point_errors.clone(),
            });
        }
    }
    reports.sort_by(|x, y| x.axis.cmp(&y.axis).then_with(|| x.quantity.cmp(&y.quantity)));
    Ok(reports)
}

use crate::error::Result;
use crate::profiles::{tstar, DataFamily, ModelParams};
use crate::spectral::{perp_gradient, sobolev_norm_vector, Grid, NormFlavor};

use super::config::ExperimentConfig;

/// Size of the approximate velocity at the inflation time against the initial drift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UbarAudit {
    pub n_osc: u32,
    pub grid_n: usize,
    /// `‖u0‖_H^(β-2)`.
    pub u0_norm: f64,
    /// `‖ū(t*)‖_H^(β-2)`.
    pub ubar_norm: f64,
    /// `‖ū(t*) - u0‖_H^(β-2)`.
    pub excess: f64,
    pub nodes: usize,
}

impl UbarAudit {
    pub fn ratio(&self) -> f64 {
        self.ubar_norm / self.u0_norm
    }
}

/// Evaluates `ū(t*)` for the base parameters of `cfg` with each angular frequency in `n_list`.
pub fn ubar_smallness(cfg: &ExperimentConfig, family: &DataFamily, n_list: &[u32]) -> Result<Vec<UbarAudit>> {
    n_list
        .iter()
        .map(|&n| {
            let p: ModelParams = cfg.params.with(cfg.params.lambda, n, cfg.params.eps);
            let t = tstar(&p);
            let grid = Grid::new(cfg.grid_for(&p, &family.h, t)?);
            let flavor = NormFlavor::Inhomogeneous;
            let s = p.beta - 2.0;
            let u0 = perp_gradient(&family.sample_b0(&p, &grid).forward()?)?;
            let ubar = family.eval_ubar(&p, &grid, t)?;
            let gap = [ubar.u[0].sub(&u0[0])?, ubar.u[1].sub(&u0[1])?];
            Ok(UbarAudit {
                n_osc: n,
                grid_n: grid.n(),
                u0_norm: sobolev_norm_vector(&u0, s, flavor)?,
                ubar_norm: sobolev_norm_vector(&ubar.u, s, flavor)?,
                excess: sobolev_norm_vector(&gap, s, flavor)?,
                nodes: ubar.nodes,
            })
        })
        .collect()
}

//! Runnable experiments: the inflation run, scaling sweeps, grid refinement
//! studies, audits of the approximate velocity, and the self-check suites.

mod audits;
mod config;
mod convergence;
mod inflation;
mod selfcheck;
mod sweep;

pub use audits::{ubar_smallness, UbarAudit};
pub use config::{ExperimentConfig, SweepAxes, TEnd};
pub use convergence::{
    convergence_study, convergence_with, embed, relative_difference, ConvergenceReport, ConvergenceRun,
    CITABLE_CHANGE,
};
pub use inflation::{
    inflation_experiment, inflation_with, run_on_grid, series_columns, GridCheck, Headline, InflationReport,
    COL_ABAR_1, COL_ABAR_BETA, COL_ABAR_L2, COL_A_BETA, COL_A_SUP, COL_B, COL_B_SUP, COL_ERR_1, COL_ERR_BETA,
};
pub use selfcheck::{self_check, CheckOutcome};
pub use sweep::{
    measure_point, scaling_sweep, scaling_sweep_with, sweep_quantities, worker_count, Axis, Quantity,
    ScalingReport, WORKERS_ENV,
};

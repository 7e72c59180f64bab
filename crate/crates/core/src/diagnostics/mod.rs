//! Norm time series, conservation audits, the error field and power-law fits.

mod audit;
mod energy;
mod fit;
mod series;

pub use audit::{
    conservation_audit, AuditReport, AuditViolation, INVISCID_ENERGY_TOL, INVISCID_L2_TOL,
    VISCOUS_SLACK,
};
pub use energy::{energy_functional, error_field};
pub use fit::{fit_power_law, FitStatus, PowerLawFit, RESIDUAL_LIMIT};
pub use series::{NormSeries, COL_A_L2, COL_ENERGY};

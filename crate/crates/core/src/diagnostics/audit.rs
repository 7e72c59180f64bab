use super::series::{NormSeries, COL_A_L2, COL_ENERGY};

/// Relative drift allowed for `‖a‖_2` in an inviscid run.
pub const INVISCID_L2_TOL: f64 = 1e-6;
/// Relative drift allowed for the energy in an inviscid run.
pub const INVISCID_ENERGY_TOL: f64 = 1e-5;
/// Absolute increase tolerated between samples of a dissipative run.
pub const VISCOUS_SLACK: f64 = 1e-9;

/// Where a conserved or decaying quantity misbehaved.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditViolation {
    pub quantity: String,
    pub index: usize,
    pub time: f64,
    pub amount: f64,
}

/// Summary of [`conservation_audit`].
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub viscous: bool,
    /// Inviscid: largest relative drift from the first sample. Viscous: largest
    /// increase between consecutive samples.
    pub a_l2: f64,
    pub energy: f64,
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Inviscid runs: drift relative to the first sample. Viscous runs: largest
/// increase between consecutive samples.
pub fn conservation_audit(series: &NormSeries, viscous: bool) -> AuditReport {
    let mut report = AuditReport { viscous, a_l2: 0.0, energy: 0.0, violations: Vec::new() };
    for (name, tol) in [(COL_A_L2, INVISCID_L2_TOL), (COL_ENERGY, INVISCID_ENERGY_TOL)] {
        let Some(v) = series.column(name) else { continue };
        if v.is_empty() {
            continue;
        }
        let mut worst = (0.0f64, 0usize);
        if viscous {
            for k in 1..v.len() {
                let up = v[k] - v[k - 1];
                if up > worst.0 {
                    worst = (up, k);
                }
            }
        } else {
            let base = v[0].abs().max(f64::MIN_POSITIVE);
            for (k, x) in v.iter().enumerate() {
                let d = (x - v[0]).abs() / base;
                if d > worst.0 || d.is_nan() {
                    worst = (d, k);
                }
            }
        }
        let limit = if viscous { VISCOUS_SLACK } else { tol };
        if worst.0 > limit || worst.0.is_nan() {
            report.violations.push(AuditViolation {
                quantity: name.to_string(),
                index: worst.1,
                time: series.times()[worst.1],
                amount: worst.0,
            });
        }
        if name == COL_A_L2 {
            report.a_l2 = worst.0;
        } else {
            report.energy = worst.0;
        }
    }
    report
}

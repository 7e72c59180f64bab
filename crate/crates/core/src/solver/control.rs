use crate::error::{Error, Result};
use crate::scalar::Real;

/// Time-step selection and stability monitoring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl<T> {
    /// Fraction of the linear stability limit used, in `(0, 1]`.
    pub cfl_safety: T,
    /// Upper bound on the step.
    pub dt_max: T,
    /// Exponential filter of order 36 and strength 36 applied after every step.
    pub filter_enabled: bool,
    /// A run is declared unstable once `‖a‖_∞` exceeds this value.
    pub blowup_threshold: T,
    /// Weight of the dispersive limit `Δx² / (c_disp ‖∇a‖_∞)`.
    pub c_disp: T,
}

impl<T: Real> Default for StepControl<T> {
    fn default() -> Self {
        Self {
            cfl_safety: T::lit(0.3),
            dt_max: T::lit(1e-2),
            filter_enabled: false,
            blowup_threshold: T::lit(1e6),
            c_disp: T::lit(4.0),
        }
    }
}

impl<T: Real> StepControl<T> {
    pub fn with_dt_max(self, dt_max: T) -> Self {
        Self { dt_max, ..self }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.cfl_safety > T::zero() && self.cfl_safety <= T::one()) {
            out.push(format!("cfl_safety = {}: must lie in (0, 1]", self.cfl_safety));
        }
        if !(self.dt_max > T::zero()) || !self.dt_max.is_finite() {
            out.push(format!("dt_max = {}: must be positive and finite", self.dt_max));
        }
        if !(self.blowup_threshold > T::zero()) {
            out.push(format!("blowup_threshold = {}: must be positive", self.blowup_threshold));
        }
        if !(self.c_disp > T::zero()) || !self.c_disp.is_finite() {
            out.push(format!("c_disp = {}: must be positive and finite", self.c_disp));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(v))
        }
    }

    /// `min(cfl Δx/‖∇⊥b‖_∞, cfl Δx²/(c_disp ‖∇a‖_∞), dt_max)`; a limit whose
    /// speed vanishes is inactive.
    pub fn dt_from_speeds(&self, dx: T, drift: T, slope: T) -> T {
        let mut dt = self.dt_max;
        if drift > T::zero() {
            dt = dt.min(self.cfl_safety * dx / drift);
        }
        if slope > T::zero() {
            dt = dt.min(self.cfl_safety * dx * dx / (self.c_disp * slope));
        }
        dt
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_speeds_give_dt_max() {
        let c = StepControl::<f64>::default();
        assert_eq!(c.dt_from_speeds(0.1, 0.0, 0.0), c.dt_max);
    }

    #[test]
    fn faster_drift_never_larger_step() {
        let c = StepControl::<f64>::default().with_dt_max(1.0);
        let mut last = f64::INFINITY;
        for k in 0..10 {
            let dt = c.dt_from_speeds(0.01, 2f64.powi(k), 0.5);
            assert!(dt <= last);
            last = dt;
        }
    }

    #[test]
    fn bad_control_listed() {
        let c = StepControl { cfl_safety: 1.5, dt_max: -1.0, ..StepControl::<f64>::default() };
        assert_eq!(c.violations().len(), 2);
    }
}

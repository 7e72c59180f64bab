use crate::error::{Error, Result};

/// How strictly the regularity index is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Window {
    /// `3 < beta < 4 - 2 alpha`, required by the inflation experiment.
    #[default]
    Strict,
    /// `beta > 1`, for data generation outside the inflation window.
    Exploratory,
}

/// Model and data parameters in one record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Dissipation order, in `[0, 0.5)`.
    pub alpha: f64,
    /// Sobolev regularity index.
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
    /// Data amplitude, in `(0, 1)`.
    pub eps: f64,
    /// Radial concentration, at least 4.
    pub lambda: f64,
    /// Angular frequency.
    pub n_osc: u32,
}

impl ModelParams {
    /// Parameters of the headline inflation run.
    pub fn headline() -> Self {
        Self { alpha: 0.25, beta: 3.2, mu: 0.01, nu: 0.01, eps: 0.5, lambda: 16.0, n_osc: 16 }
    }

    pub fn with(self, lambda: f64, n_osc: u32, eps: f64) -> Self {
        Self { lambda, n_osc, eps, ..self }
    }

    pub fn inviscid(self) -> Self {
        Self { mu: 0.0, nu: 0.0, ..self }
    }

    /// Every violated constraint, keyed by config name.
    pub fn violations(&self, window: Window) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.alpha >= 0.0 && self.alpha < 0.5) {
            out.push(format!("alpha = {}: must lie in [0, 0.5)", self.alpha));
        }
        match window {
            Window::Strict => {
                let hi = 4.0 - 2.0 * self.alpha;
                if !(self.beta > 3.0 && self.beta < hi) {
                    out.push(format!(
                        "beta = {}: outside the inflation window 3 < beta < 4 - 2*alpha = {hi}",
                        self.beta
                    ));
                }
            }
            Window::Exploratory => {
                if !(self.beta > 1.0 && self.beta.is_finite()) {
                    out.push(format!("beta = {}: must exceed 1", self.beta));
                }
            }
        }
        for (name, v) in [("mu", self.mu), ("nu", self.nu)] {
            if !(v >= 0.0 && v.is_finite()) {
                out.push(format!("{name} = {v}: must be finite and nonnegative"));
            }
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            out.push(format!("epsilon = {}: must lie in (0, 1)", self.eps));
        }
        if !(self.lambda >= 4.0 && self.lambda.is_finite()) {
            out.push(format!("lambda = {}: must be finite and >= 4", self.lambda));
        }
        if self.n_osc == 0 {
            out.push("n_osc = 0: must be a positive integer".to_string());
        }
        out
    }

    pub fn validate(&self, window: Window) -> Result<()> {
        let v = self.violations(window);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(v))
        }
    }

    /// `ε λ^(1-β) N^(-β)`, amplitude of the oscillating field.
    pub fn a_amplitude(&self) -> f64 {
        self.eps * self.lambda.powf(1.0 - self.beta) * (self.n_osc as f64).powf(-self.beta)
    }

    /// `ε λ^(2-β)`, amplitude of the drift potential.
    pub fn b_amplitude(&self) -> f64 {
        self.eps * self.lambda.powf(2.0 - self.beta)
    }

    /// `ε λ^(4-β)`, angular velocity scale of the drift in the radial variable.
    pub fn shear_rate(&self) -> f64 {
        self.eps * self.lambda.powf(4.0 - self.beta)
    }
}

/// Inflation time `ε^(-2) λ^(β-4)`.
pub fn tstar(p: &ModelParams) -> f64 {
    p.eps.powi(-2) * p.lambda.powf(p.beta - 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_enforced() {
        let p = ModelParams { beta: 3.6, ..ModelParams::headline() };
        let v = p.violations(Window::Strict);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("3 < beta < 4 - 2*alpha = 3.5"));
        assert!(p.validate(Window::Exploratory).is_ok());
        assert!(ModelParams::headline().validate(Window::Strict).is_ok());
    }

    #[test]
    fn all_violations_listed() {
        let p = ModelParams { alpha: 0.7, beta: 0.5, mu: -1.0, nu: 0.0, eps: 2.0, lambda: 1.0, n_osc: 0 };
        assert_eq!(p.violations(Window::Strict).len(), 6);
    }

    #[test]
    fn tstar_values() {
        let p = ModelParams { eps: 1.0, lambda: 1.0, ..ModelParams::headline() };
        assert_eq!(tstar(&p), 1.0);
        let t = tstar(&ModelParams::headline());
        assert!((t - 4.0 * 16f64.powf(-0.8)).abs() < 1e-15);
        assert!((t - 0.4353).abs() < 1e-4);
    }
}

use std::sync::Arc;

use super::data::DataFamily;
use super::params::ModelParams;
use crate::spectral::{Field, Grid};

/// Transports the initial oscillating field along the characteristics of the
/// frozen initial drift `u0`, traced backward in Cartesian coordinates with
/// classical RK4 and `substeps` steps per point.
pub fn semi_lagrangian_abar(
    family: &DataFamily,
    p: &ModelParams,
    grid: &Arc<Grid<f64>>,
    t: f64,
    substeps: usize,
) -> Field<f64> {
    let amp_u = p.b_amplitude() * p.lambda;
    let amp_a = p.a_amplitude();
    let lam = p.lambda;
    let nn = p.n_osc as f64;
    let h = family.h;
    let g = family.g;
    let vel = |x: f64, y: f64| -> (f64, f64) {
        let r = x.hypot(y);
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let q = amp_u * h.eval_d1(lam * r) / r;
        (-y * q, x * q)
    };
    let (lo, hi) = g.support();
    let dt = -t / substeps.max(1) as f64;
    Field::from_fn(grid, |x0, y0| {
        let rho = lam * x0.hypot(y0);
        // Characteristics of a rotation keep the radius, so points off the
        // support of the oscillating profile stay there.
        if !(rho > lo && rho < hi) {
            return 0.0;
        }
        let (mut x, mut y) = (x0, y0);
        for _ in 0..substeps {
            let k1 = vel(x, y);
            let k2 = vel(x + 0.5 * dt * k1.0, y + 0.5 * dt * k1.1);
            let k3 = vel(x + 0.5 * dt * k2.0, y + 0.5 * dt * k2.1);
            let k4 = vel(x + dt * k3.0, y + dt * k3.1);
            x += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            y += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        amp_a * g.eval(lam * x.hypot(y)) * (nn * y.atan2(x)).cos()
    })
}

use std::f64::consts::PI;

use super::bump::BumpProfile;
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::spectral::GridSpec;

/// Half-width of the data-following box in units of `1/λ`; the data live in `r < 4/λ`.
pub const DATA_BOX: f64 = 4.5;

/// Points per `λ N` per `L/π` demanded by the static rule.
pub const STATIC_FACTOR: f64 = 16.0;

/// Safety factor on the sheared wavenumber and allowance for the radial envelope.
const SHEAR_MARGIN: f64 = 1.25;
const ENVELOPE_WAVENUMBER: f64 = 30.0;

const SAMPLES: usize = 2000;

pub fn data_half_width(lambda: f64) -> f64 {
    DATA_BOX / lambda
}

fn round_up_even(x: f64) -> usize {
    let n = (x - 1e-9).ceil().max(GridSpec::<f64>::MIN_N as f64) as usize;
    n + n % 2
}

/// Smallest grid size allowed by the static rule `n >= 16 λ N L / π`.
pub fn static_min_n(p: &ModelParams, half_width: f64) -> usize {
    round_up_even(STATIC_FACTOR * p.lambda * p.n_osc as f64 * half_width / PI)
}

/// Largest local wavenumber of the sheared oscillation at time `t`:
/// `λ N max_ρ sqrt(ρ^-2 + (τ ω'(ρ))^2)` over the support of the oscillating
/// profile, with `ω = h'/ρ` and `τ = t ε λ^(4-β)`.
pub fn sheared_wavenumber(p: &ModelParams, h: &BumpProfile, t: f64) -> f64 {
    let tau = t * p.shear_rate();
    let mut worst: f64 = 0.0;
    for m in 0..=SAMPLES {
        let rho = 2.0 + m as f64 / SAMPLES as f64;
        let j = h.jet(rho);
        let omega_d = j.d2 / rho - j.d1 / (rho * rho);
        worst = worst.max((rho.powi(-2) + (tau * omega_d).powi(2)).sqrt());
    }
    p.lambda * p.n_osc as f64 * worst
}

/// Wavenumber that the 2/3-rule cutoff must reach to resolve the data at time `t`.
pub fn required_cutoff(p: &ModelParams, h: &BumpProfile, t: f64) -> f64 {
    SHEAR_MARGIN * sheared_wavenumber(p, h, t) + ENVELOPE_WAVENUMBER * p.lambda
}

/// Smallest grid size whose dealiased band reaches [`required_cutoff`].
pub fn sheared_min_n(p: &ModelParams, h: &BumpProfile, t: f64, half_width: f64) -> usize {
    round_up_even(3.0 * half_width * required_cutoff(p, h, t) / PI)
}

/// Smallest even `n >= min` of the form `2^a 3^b 5^c`.
pub fn fft_friendly(min: usize) -> usize {
    let mut n = min.max(2);
    loop {
        if n % 2 == 0 {
            let mut m = n;
            for f in [2, 3, 5] {
                while m % f == 0 {
                    m /= f;
                }
            }
            if m == 1 {
                return n;
            }
        }
        n += 1;
    }
}

/// Grid satisfying both rules up to time `t_end`. `half_width` defaults to the
/// data-following box.
pub fn choose_grid(
    p: &ModelParams,
    h: &BumpProfile,
    t_end: f64,
    half_width: Option<f64>,
) -> Result<GridSpec<f64>> {
    let l = half_width.unwrap_or_else(|| data_half_width(p.lambda));
    let n = static_min_n(p, l).max(sheared_min_n(p, h, t_end, l));
    GridSpec::new(fft_friendly(n), l)
}

/// Checks the static rule and the sheared rule at time `t`.
pub fn check_resolution(p: &ModelParams, h: &BumpProfile, spec: &GridSpec<f64>, t: f64) -> Result<()> {
    let l = spec.half_width();
    let need = static_min_n(p, l).max(sheared_min_n(p, h, t, l));
    if spec.n() < need {
        return Err(Error::Resolution(format!(
            "grid_n = {} too small for lambda = {}, N = {} at t = {t:.6}: requires n >= {need}",
            spec.n(),
            p.lambda,
            p.n_osc
        )));
    }
    Ok(())
}

/// Checks that the box contains the data support `r < 4/λ`.
pub fn check_box(p: &ModelParams, spec: &GridSpec<f64>) -> Result<()> {
    if spec.half_width() * p.lambda < 4.0 {
        return Err(Error::Resolution(format!(
            "half_width = {} does not contain the data support r < 4/lambda = {}",
            spec.half_width(),
            4.0 / p.lambda
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{make_h, tstar};

    #[test]
    fn friendly_sizes() {
        assert_eq!(fft_friendly(367), 384);
        assert_eq!(fft_friendly(438), 450);
        assert_eq!(fft_friendly(16), 16);
        assert_eq!(fft_friendly(17), 18);
    }

    #[test]
    fn static_rule_arithmetic() {
        let p = ModelParams::headline();
        assert_eq!(static_min_n(&p, PI), 4096);
        assert_eq!(static_min_n(&p, data_half_width(16.0)), 368);
    }

    #[test]
    fn headline_grid() {
        let p = ModelParams::headline();
        let h = make_h().unwrap();
        let g = choose_grid(&p, &h, tstar(&p), None).unwrap();
        assert!(g.n() >= 384 && g.n() <= 600, "{}", g.n());
        assert!(check_resolution(&p, &h, &g, tstar(&p)).is_ok());
        assert!(check_resolution(&p, &h, &GridSpec::new(128, g.half_width()).unwrap(), 0.0).is_err());
    }
}

use super::jet::Jet3;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Amplitude of the drift profile `h = H_SCALE * χ(ρ) e^ρ`.
pub const H_SCALE: f64 = 0.4;

/// Below this argument `exp(-1/x)` underflows in double precision.
const TINY: f64 = 1.0 / 700.0;

/// Number of samples used to check the sign conditions of `h`.
const CHECK_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Shape {
    Bump,
    CutoffExp { scale: f64 },
}

/// A smooth compactly supported radial profile together with its first three
/// derivatives in the radial variable `ρ = λ r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpProfile {
    support: (f64, f64),
    shape: Shape,
}

/// `exp(-1/x)` for `x > 0`, zero otherwise.
fn psi<T: Real>(x: Jet3<T>) -> Jet3<T> {
    if x.v <= T::lit(TINY) {
        Jet3::zero()
    } else {
        (-x.recip()).exp()
    }
}

/// Smooth step rising from 0 at `x = 0` to 1 at `x = 1`.
fn smoothstep<T: Real>(x: Jet3<T>) -> Jet3<T> {
    if x.v <= T::lit(TINY) {
        Jet3::zero()
    } else if x.v >= T::lit(1.0 - TINY) {
        Jet3::constant(T::one())
    } else {
        let p = psi(x);
        let q = psi(-x + T::one());
        p.div(p + q)
    }
}

/// Cutoff equal to 1 on `[1.8, 3.2]` and supported in `(1, 4)`.
fn cutoff<T: Real>(r: Jet3<T>) -> Jet3<T> {
    let w = T::lit(1.0 / 0.8);
    let up = smoothstep((r + T::lit(-1.0)).scale(w));
    let down = smoothstep((-r + T::lit(4.0)).scale(w));
    up * down
}

impl BumpProfile {
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Value and derivatives at `rho`.
    pub fn jet<T: Real>(&self, rho: T) -> Jet3<T> {
        let (lo, hi) = self.support;
        if !(rho > T::lit(lo) && rho < T::lit(hi)) {
            return Jet3::zero();
        }
        let r = Jet3::variable(rho);
        match self.shape {
            Shape::Bump => {
                let q = (r + T::lit(-lo)) * (-r + T::lit(hi));
                if q.v <= T::lit(TINY) {
                    Jet3::zero()
                } else {
                    (-q.recip() + T::lit(4.0)).exp()
                }
            }
            Shape::CutoffExp { scale } => (cutoff(r) * r.exp()).scale(T::lit(scale)),
        }
    }

    pub fn eval<T: Real>(&self, rho: T) -> T {
        self.jet(rho).v
    }

    pub fn eval_d1<T: Real>(&self, rho: T) -> T {
        self.jet(rho).d1
    }

    pub fn eval_d2<T: Real>(&self, rho: T) -> T {
        self.jet(rho).d2
    }

    pub fn eval_d3<T: Real>(&self, rho: T) -> T {
        self.jet(rho).d3
    }

    /// Largest `|f^(order)|` over a uniform sample of the support.
    pub fn max_abs(&self, order: usize, samples: usize) -> f64 {
        let (lo, hi) = self.support;
        (0..=samples)
            .map(|m| {
                let j = self.jet(lo + (hi - lo) * m as f64 / samples as f64);
                [j.v, j.d1, j.d2, j.d3][order].abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Bump on `(2, 3)`: `exp(-1/((ρ-2)(3-ρ)))` rescaled so that its maximum, at
/// `ρ = 2.5`, equals 1.
pub fn make_g() -> BumpProfile {
    BumpProfile { support: (2.0, 3.0), shape: Shape::Bump }
}

/// Drift profile `H_SCALE * χ(ρ) e^ρ`, supported in `(1, 4)`, increasing and
/// convex on `[2, 3]`.
pub fn make_h() -> Result<BumpProfile> {
    make_h_scaled(H_SCALE)
}

/// Drift profile with a custom amplitude.
pub fn make_h_scaled(scale: f64) -> Result<BumpProfile> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::param("scale", format!("{scale} must be positive")));
    }
    let h = BumpProfile { support: (1.0, 4.0), shape: Shape::CutoffExp { scale } };
    for m in 0..=CHECK_SAMPLES {
        let rho = 2.0 + m as f64 / CHECK_SAMPLES as f64;
        let j = h.jet(rho);
        if !(j.d1 > 0.0 && j.d2 > 0.0) {
            return Err(Error::ProfileVerification(format!(
                "h' = {}, h'' = {} at rho = {rho}",
                j.d1, j.d2
            )));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_peak_and_support() {
        let g = make_g();
        assert!((g.eval(2.5f64) - 1.0).abs() < 1e-15);
        assert_eq!(g.eval(1.99f64), 0.0);
        assert_eq!(g.eval(3.01f64), 0.0);
        assert!(g.eval_d1(2.5f64).abs() < 1e-14);
    }

    #[test]
    fn h_plateau() {
        let h = make_h().unwrap();
        assert!((h.eval(2.5f64) - H_SCALE * 2.5f64.exp()).abs() < 1e-13);
        assert_eq!(h.eval(0.9f64), 0.0);
        assert_eq!(h.eval(4.1f64), 0.0);
        let j = h.jet(3.0f64);
        let e = H_SCALE * 3.0f64.exp();
        for d in [j.v, j.d1, j.d2, j.d3] {
            assert!((d - e).abs() < 1e-12 * e);
        }
    }

    #[test]
    fn smoothstep_symmetry() {
        for m in 1..100 {
            let x = m as f64 / 100.0;
            let a = smoothstep(Jet3::variable(x)).v;
            let b = smoothstep(Jet3::variable(1.0 - x)).v;
            assert!((a + b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn f32_evaluation() {
        let g = make_g();
        assert!((g.eval(2.5f32) - 1.0).abs() < 1e-6);
    }
}

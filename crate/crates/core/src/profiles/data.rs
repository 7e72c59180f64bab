use std::sync::Arc;

use rustfft::num_complex::Complex;

use super::bump::{make_g, make_h, BumpProfile};
use super::params::ModelParams;
use super::resolution::{check_box, check_resolution};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{
    dealias, grad_laplacian, l2_norm, l2_norm_vector, perp_gradient, sobolev_norm_vector,
    sup_magnitude, Field, Grid, NormFlavor,
};

/// Phase law of the sheared oscillation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Shear {
    /// Angular velocity `u_θ / r = ε λ^(4-β) h'(ρ)/ρ`, the transport by the initial drift.
    #[default]
    Exact,
    /// Phase `ε N λ^(4-β) t h'(ρ)`, which replaces `1/ρ` by 1 on the annulus.
    Displayed,
}

/// Initial data: oscillating field, drift potential, and its velocity
/// computed analytically and spectrally.
#[derive(Clone, Debug)]
pub struct InitialData<T: Real> {
    pub a0: Field<T>,
    pub b0: Field<T>,
    /// `ε λ^(3-β) h'(λ r) e_θ` sampled pointwise.
    pub u0: [Field<T>; 2],
    /// `∇⊥ b0` computed spectrally.
    pub u0_spectral: [Field<T>; 2],
}

impl<T: Real> InitialData<T> {
    /// Relative L² gap between the analytic and spectral velocity.
    pub fn velocity_mismatch(&self) -> Result<T> {
        let diff = [self.u0[0].sub(&self.u0_spectral[0])?, self.u0[1].sub(&self.u0_spectral[1])?];
        Ok(l2_norm_vector(&diff)? / l2_norm_vector(&self.u0)?)
    }
}

/// The pair of radial profiles that defines the data.
#[derive(Clone, Copy, Debug)]
pub struct DataFamily {
    pub g: BumpProfile,
    pub h: BumpProfile,
}

impl DataFamily {
    pub fn standard() -> Self {
        Self { g: make_g(), h: make_h().expect("standard drift profile verifies") }
    }

    pub fn new(g: BumpProfile, h: BumpProfile) -> Self {
        Self { g, h }
    }

    fn check(&self, p: &ModelParams, grid: &Grid<impl Real>, t: f64) -> Result<()> {
        let spec = grid.spec().with_f64();
        check_box(p, &spec)?;
        check_resolution(p, &self.h, &spec, t)
    }

    /// Oscillating field at time `t`, transported by the frozen initial drift.
    /// At `t = 0` this is the initial datum.
    pub fn sample_abar<T: Real>(
        &self,
        p: &ModelParams,
        grid: &Arc<Grid<T>>,
        t: T,
        shear: Shear,
    ) -> Field<T> {
        let amp = T::lit(p.a_amplitude());
        let lambda = T::lit(p.lambda);
        let nn = T::from_u32(p.n_osc).unwrap();
        let twist = nn * t * T::lit(p.shear_rate());
        Field::from_fn(grid, |x, y| {
            let rho = lambda * x.hypot(y);
            let g = self.g.eval(rho);
            if g == T::zero() {
                return T::zero();
            }
            let dh = self.h.eval_d1(rho);
            let omega = match shear {
                Shear::Exact => dh / rho,
                Shear::Displayed => dh,
            };
            amp * g * (nn * y.atan2(x) - twist * omega).cos()
        })
    }

    pub fn sample_b0<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>) -> Field<T> {
        let amp = T::lit(p.b_amplitude());
        let lambda = T::lit(p.lambda);
        Field::from_fn(grid, |x, y| amp * self.h.eval(lambda * x.hypot(y)))
    }

    /// `ε λ^(3-β) h'(λ r) e_θ`, zero at the origin.
    pub fn sample_u0<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>) -> [Field<T>; 2] {
        let amp = T::lit(p.b_amplitude() * p.lambda);
        let lambda = T::lit(p.lambda);
        let q = |x: T, y: T| {
            let r = x.hypot(y);
            if r == T::zero() {
                T::zero()
            } else {
                amp * self.h.eval_d1(lambda * r) / r
            }
        };
        [Field::from_fn(grid, |x, y| -y * q(x, y)), Field::from_fn(grid, |x, y| x * q(x, y))]
    }

    pub fn build_initial_data<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>) -> Result<InitialData<T>> {
        self.check(p, grid, 0.0)?;
        let a0 = self.sample_abar(p, grid, T::zero(), Shear::Exact).forward()?;
        let b0 = self.sample_b0(p, grid).forward()?;
        let u0 = self.sample_u0(p, grid);
        let u0_spectral = perp_gradient(&b0)?;
        Ok(InitialData { a0, b0, u0, u0_spectral })
    }

    pub fn eval_abar<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>, t: T, shear: Shear) -> Result<Field<T>> {
        if !(t >= T::zero()) {
            return Err(Error::param("t", format!("{t} must be nonnegative")));
        }
        self.check(p, grid, t.as_f64())?;
        Ok(self.sample_abar(p, grid, t, shear))
    }

    /// Spectral coefficients of `∇⊥ā·∇Δā` at time `t`, with dealiased factors
    /// and a dealiased product.
    fn hall_term<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<Vec<Complex<T>>> {
        let a = dealias(&self.sample_abar(p, grid, t, Shear::Exact))?;
        let [px, py] = perp_gradient(&a)?;
        let [lx, ly] = grad_laplacian(&a)?;
        let (px, py, lx, ly) = (px.values()?, py.values()?, lx.values()?, ly.values()?);
        let prod = (0..px.len()).map(|m| px[m] * lx[m] + py[m] * ly[m]).collect();
        dealias(&Field::from_real(grid, prod)?)?.into_spectral()
    }

    /// Velocity of the approximate solution,
    /// `ū(t) = u0 - ∇⊥ ∫_0^t ∇⊥ā·∇Δā dτ`, by composite Simpson quadrature
    /// with node doubling.
    pub fn eval_ubar<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<Ubar<T>> {
        let t_star = T::lit(super::params::tstar(p));
        if !(t >= T::zero() && t <= t_star * T::lit(1.0 + 1e-12)) {
            return Err(Error::param("t", format!("{t} outside [0, t*] = [0, {t_star}]")));
        }
        self.check(p, grid, t.as_f64())?;
        let b0 = self.sample_b0(p, grid).forward()?;
        let u0 = perp_gradient(&b0)?;
        if t == T::zero() {
            return Ok(Ubar { u: u0, nodes: 1 });
        }
        let beta_m2 = T::lit(p.beta - 2.0);
        let len = grid.len();
        let at = |tau: T| self.hall_term(p, grid, tau);

        // acc holds the trapezoid sum with halved endpoints on the current level.
        let mut acc: Vec<Complex<T>> = at(T::zero())?;
        for (s, e) in acc.iter_mut().zip(at(t)?) {
            *s = (*s + e) * T::lit(0.5);
        }
        let mut intervals = 1usize;
        let mut trap: Vec<Complex<T>> = acc.iter().map(|&z| z * t).collect();
        let mut last_norm: Option<T> = None;
        loop {
            let fresh = 2 * intervals;
            for i in (1..fresh).step_by(2) {
                let tau = t * T::from_usize_lossy(i) / T::from_usize_lossy(fresh);
                for (s, z) in acc.iter_mut().zip(at(tau)?) {
                    *s = *s + z;
                }
            }
            intervals = fresh;
            let h = t / T::from_usize_lossy(intervals);
            let new_trap: Vec<Complex<T>> = acc.iter().map(|&z| z * h).collect();
            let coarse = std::mem::replace(&mut trap, new_trap);
            if intervals < 32 {
                continue;
            }
            let q: Vec<Complex<T>> = (0..len)
                .map(|m| (trap[m] * T::lit(4.0) - coarse[m]) / T::lit(3.0))
                .collect();
            let [qx, qy] = perp_gradient(&Field::from_spectral(grid, q)?)?;
            let u = [u0[0].sub(&qx)?, u0[1].sub(&qy)?];
            let norm = sobolev_norm_vector(&u, beta_m2, NormFlavor::Inhomogeneous)?;
            if let Some(prev) = last_norm {
                if (norm - prev).abs() < T::lit(1e-4) * norm {
                    return Ok(Ubar { u, nodes: intervals + 1 });
                }
            }
            if intervals >= MAX_INTERVALS {
                return Err(Error::Quadrature(format!(
                    "H^(beta-2) norm still moving after {} nodes",
                    intervals + 1
                )));
            }
            last_norm = Some(norm);
        }
    }

    /// Cancellation ratio of the Hall term on the approximate solution at time `t`.
    pub fn orthogonality_ratio<T: Real>(&self, p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<T> {
        let t_star = T::lit(super::params::tstar(p));
        if !(t >= T::zero() && t <= t_star * T::lit(1.0 + 1e-12)) {
            return Err(Error::param("t", format!("{t} outside [0, t*] = [0, {t_star}]")));
        }
        orthogonality_ratio_of(&self.eval_abar(p, grid, t, Shear::Exact)?)
    }
}

const MAX_INTERVALS: usize = 1024;

/// Result of [`DataFamily::eval_ubar`].
#[derive(Clone, Debug)]
pub struct Ubar<T: Real> {
    pub u: [Field<T>; 2],
    /// Quadrature nodes used by the accepted estimate.
    pub nodes: usize,
}

/// `‖∇⊥f·∇Δf‖_2 / (‖∇⊥f‖_∞ ‖∇Δf‖_2)`.
pub fn orthogonality_ratio_of<T: Real>(f: &Field<T>) -> Result<T> {
    let perp = perp_gradient(f)?;
    let gl = grad_laplacian(f)?;
    let prod = crate::spectral::dot(&perp, &gl)?;
    let den = sup_magnitude(&perp)? * l2_norm_vector(&gl)?;
    if !(den > T::zero()) {
        return Err(Error::Degenerate("field has no gradient".into()));
    }
    Ok(l2_norm(&prod)? / den)
}

/// Largest `|f|` outside the data annulus `r >= 4/λ`, relative to the largest `|f|`.
pub fn boundary_leakage<T: Real>(f: &Field<T>, lambda: f64) -> Result<T> {
    let v = f.values()?;
    let spec = *f.grid().spec();
    let n = spec.n();
    let r_out = T::lit(4.0 / lambda);
    let (mut outside, mut total) = (T::zero(), T::zero());
    for i in 0..n {
        let x = spec.coord(i);
        for j in 0..n {
            let a = v[i * n + j].abs();
            total = total.max(a);
            if x.hypot(spec.coord(j)) >= r_out {
                outside = outside.max(a);
            }
        }
    }
    Ok(if total > T::zero() { outside / total } else { T::zero() })
}

pub fn build_initial_data<T: Real>(p: &ModelParams, grid: &Arc<Grid<T>>) -> Result<InitialData<T>> {
    DataFamily::standard().build_initial_data(p, grid)
}

pub fn eval_abar<T: Real>(p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<Field<T>> {
    DataFamily::standard().eval_abar(p, grid, t, Shear::Exact)
}

pub fn eval_ubar<T: Real>(p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<[Field<T>; 2]> {
    Ok(DataFamily::standard().eval_ubar(p, grid, t)?.u)
}

pub fn orthogonality_ratio<T: Real>(p: &ModelParams, grid: &Arc<Grid<T>>, t: T) -> Result<T> {
    DataFamily::standard().orthogonality_ratio(p, grid, t)
}

use std::sync::Arc;

use rustfft::num_complex::Complex;

use super::control::StepControl;
use super::state::SolverState;
use crate::error::{Error, Result};
use crate::profiles::ModelParams;
use crate::scalar::Real;
use crate::spectral::{Field, Grid};

const FILTER_ORDER: i32 = 36;
const FILTER_STRENGTH: f64 = 36.0;

/// Largest speeds seen while forming the nonlinear terms.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Speeds<T> {
    /// `‖∇⊥b‖_∞`.
    pub drift: T,
    /// `‖∇a‖_∞`.
    pub slope: T,
}

/// Outcome of [`Solver::evolve`].
#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Completed,
    /// The run stopped; the returned state is the last valid one.
    Unstable { reason: String },
}

impl RunStatus {
    pub fn is_completed(&self) -> bool {
        matches!(self, RunStatus::Completed)
    }
}

/// Outcome of a single [`Solver::step`].
#[derive(Clone, Debug)]
pub enum Stepped<T: Real> {
    Advanced(SolverState<T>),
    Unstable(String),
}

struct Work<T> {
    z: [Vec<Complex<T>>; 3],
    k: [[Vec<Complex<T>>; 2]; 4],
    s: [Vec<Complex<T>>; 2],
}

impl<T: Real> Work<T> {
    fn new(len: usize) -> Self {
        let v = || vec![Complex::default(); len];
        Self {
            z: [v(), v(), v()],
            k: [[v(), v()], [v(), v()], [v(), v()], [v(), v()]],
            s: [v(), v()],
        }
    }
}

/// Integrating-factor RK4 for
/// `a_t = -∇⊥b·∇a - μ(-Δ)^α a`, `b_t = -∇⊥a·∇Δa - ν(-Δ)^α b`.
pub struct Solver<T: Real> {
    grid: Arc<Grid<T>>,
    mu: T,
    nu: T,
    ctrl: StepControl<T>,
    /// `|k|^(2α)`, zero at the origin.
    frac: Vec<T>,
    filter: Option<Vec<T>>,
    work: Work<T>,
}

impl<T: Real> Solver<T> {
    pub fn new(grid: &Arc<Grid<T>>, alpha: T, mu: T, nu: T, ctrl: StepControl<T>) -> Result<Self> {
        ctrl.validate()?;
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::param("alpha", format!("{alpha} outside [0, 1]")));
        }
        for (name, v) in [("mu", mu), ("nu", nu)] {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::param(name, format!("{v} must be finite and nonnegative")));
            }
        }
        let frac = grid
            .k_sq()
            .iter()
            .map(|&q| if q == T::zero() { T::zero() } else { q.powf(alpha) })
            .collect();
        let filter = ctrl.filter_enabled.then(|| {
            let n = grid.n();
            let cut = T::from_usize_lossy(grid.spec().dealias_cutoff());
            let spec = grid.spec();
            (0..grid.len())
                .map(|m| {
                    let j = spec.signed_index(m / n).unsigned_abs().max(spec.signed_index(m % n).unsigned_abs());
                    let r = T::from_usize_lossy(j) / cut;
                    (-T::lit(FILTER_STRENGTH) * r.powi(FILTER_ORDER)).exp()
                })
                .collect()
        });
        Ok(Self { grid: grid.clone(), mu, nu, ctrl, frac, filter, work: Work::new(grid.len()) })
    }

    pub fn from_params(p: &ModelParams, grid: &Arc<Grid<T>>, ctrl: StepControl<T>) -> Result<Self> {
        Self::new(grid, T::lit(p.alpha), T::lit(p.mu), T::lit(p.nu), ctrl)
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn control(&self) -> &StepControl<T> {
        &self.ctrl
    }

    /// Spectral tendencies `(-F[∇⊥b·∇a], -F[∇⊥a·∇Δa])` of the nonlinear terms.
    pub fn nonlinear_rhs(&mut self, state: &SolverState<T>) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>)> {
        self.check_grid(state)?;
        let len = self.grid.len();
        let mut da = vec![Complex::default(); len];
        let mut db = vec![Complex::default(); len];
        let mut z = std::mem::replace(&mut self.work.z, [Vec::new(), Vec::new(), Vec::new()]);
        let res = rhs_into(&self.grid, state.a_hat(), state.b_hat(), &mut da, &mut db, &mut z);
        self.work.z = z;
        res?;
        Ok((da, db))
    }

    /// Step size allowed at `state`.
    pub fn cfl(&mut self, state: &SolverState<T>) -> Result<T> {
        self.check_grid(state)?;
        let mut z = std::mem::replace(&mut self.work.z, [Vec::new(), Vec::new(), Vec::new()]);
        let [k0a, k0b] = &mut self.work.k[0];
        let res = rhs_into(&self.grid, state.a_hat(), state.b_hat(), k0a, k0b, &mut z);
        self.work.z = z;
        let sp = res?;
        Ok(self.ctrl.dt_from_speeds(self.grid.spec().dx(), sp.drift, sp.slope))
    }

    fn check_grid(&self, state: &SolverState<T>) -> Result<()> {
        if !self.grid.same_as(state.a.grid()) || !self.grid.same_as(state.b.grid()) {
            return Err(Error::GridMismatch("state does not live on the solver grid".into()));
        }
        Ok(())
    }

    /// Advances by one CFL-limited step, never past `t_limit`.
    pub fn step(&mut self, state: &SolverState<T>, t_limit: T) -> Result<Stepped<T>> {
        self.check_grid(state)?;
        let mut a = state.a_hat().to_vec();
        let mut b = state.b_hat().to_vec();
        match self.advance(&mut a, &mut b, state.time, t_limit)? {
            Err(reason) => Ok(Stepped::Unstable(reason)),
            Ok((time, dt)) => Ok(Stepped::Advanced(assemble(
                &self.grid,
                a,
                b,
                time,
                state.step_count + 1,
                dt,
            )?)),
        }
    }

    /// Steps from `state0` until `t_end`, calling `observer` on the initial
    /// state, after every `stride`-th step, and on the final state.
    pub fn evolve(
        &mut self,
        state0: &SolverState<T>,
        t_end: T,
        stride: usize,
        mut observer: impl FnMut(&SolverState<T>) -> Result<()>,
    ) -> Result<(SolverState<T>, RunStatus)> {
        self.check_grid(state0)?;
        if !(t_end >= state0.time) {
            return Err(Error::param("t_end", format!("{t_end} precedes the state time {}", state0.time)));
        }
        let stride = stride.max(1);
        observer(state0)?;
        if t_end == state0.time {
            return Ok((state0.clone(), RunStatus::Completed));
        }
        let grid = self.grid.clone();
        let mut a = state0.a_hat().to_vec();
        let mut b = state0.b_hat().to_vec();
        let mut time = state0.time;
        let mut steps = state0.step_count;
        let mut last_dt = state0.last_dt;
        loop {
            let prev = (a.clone(), b.clone());
            match self.advance(&mut a, &mut b, time, t_end)? {
                Err(reason) => {
                    let state = assemble(&grid, prev.0, prev.1, time, steps, last_dt)?;
                    return Ok((state, RunStatus::Unstable { reason }));
                }
                Ok((t, dt)) => {
                    time = t;
                    last_dt = dt;
                    steps += 1;
                }
            }
            let done = time >= t_end;
            if done || (steps - state0.step_count) % stride as u64 == 0 {
                let state = assemble(&grid, a.clone(), b.clone(), time, steps, last_dt)?;
                observer(&state)?;
                if done {
                    return Ok((state, RunStatus::Completed));
                }
            }
        }
    }

    /// One IF-RK4 step in place. The inner result is `Err` when the step
    /// produced non-finite or blown-up values; `a` and `b` are then garbage.
    fn advance(
        &mut self,
        a: &mut [Complex<T>],
        b: &mut [Complex<T>],
        t: T,
        t_limit: T,
    ) -> Result<std::result::Result<(T, T), String>> {
        let grid = self.grid.clone();
        let Work { z, k, s } = &mut self.work;
        let [k1, k2, k3, k4] = k;
        let [k1a, k1b] = &mut *k1;
        let sp = match rhs_into(&grid, a, b, k1a, k1b, z) {
            Ok(sp) => sp,
            Err(Error::NonFinite(w)) => return Ok(Err(format!("non-finite values in {w}"))),
            Err(e) => return Err(e),
        };
        let mut dt = self.ctrl.dt_from_speeds(grid.spec().dx(), sp.drift, sp.slope);
        let mut t_new = t + dt;
        if t_new >= t_limit || t_limit - t_new <= T::lit(1e-12) * t_limit.abs() {
            dt = t_limit - t;
            t_new = t_limit;
        }
        if !(dt > T::zero()) {
            return Ok(Err(format!("step size collapsed to {dt}")));
        }
        let half = dt * T::lit(0.5);
        let (ea, eha) = propagators(&self.frac, self.mu, dt);
        let (eb, ehb) = propagators(&self.frac, self.nu, dt);
        let e = [&ea, &eb];
        let eh = [&eha, &ehb];
        let u: [&mut [Complex<T>]; 2] = [a, b];

        // stage 2: Eh (u + dt/2 k1)
        for c in 0..2 {
            for m in 0..u[c].len() {
                s[c][m] = (u[c][m] + k1[c][m] * half) * fac(eh[c], m);
            }
        }
        if let Some(r) = stage(&grid, s, k2, z)? {
            return Ok(Err(r));
        }
        // stage 3: Eh u + dt/2 k2
        for c in 0..2 {
            for m in 0..u[c].len() {
                s[c][m] = u[c][m] * fac(eh[c], m) + k2[c][m] * half;
            }
        }
        if let Some(r) = stage(&grid, s, k3, z)? {
            return Ok(Err(r));
        }
        // stage 4: E u + dt Eh k3
        for c in 0..2 {
            for m in 0..u[c].len() {
                s[c][m] = u[c][m] * fac(e[c], m) + k3[c][m] * (dt * fac(eh[c], m));
            }
        }
        if let Some(r) = stage(&grid, s, k4, z)? {
            return Ok(Err(r));
        }
        let sixth = dt / T::lit(6.0);
        let two = T::lit(2.0);
        let mut a_abs = T::zero();
        for c in 0..2 {
            for m in 0..u[c].len() {
                let (ef, ehf) = (fac(e[c], m), fac(eh[c], m));
                let mut v = u[c][m] * ef
                    + (k1[c][m] * ef + (k2[c][m] + k3[c][m]) * (two * ehf) + k4[c][m]) * sixth;
                if let Some(f) = &self.filter {
                    v = v * f[m];
                }
                u[c][m] = v;
                if c == 0 {
                    a_abs = a_abs + v.norm();
                }
            }
        }
        if u.iter().any(|x| x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
            return Ok(Err(format!("non-finite coefficients at t = {t_new}")));
        }
        // Σ|â|/n² bounds ‖a‖_∞; the exact maximum is only computed when the bound trips.
        let len = T::from_usize_lossy(grid.len());
        if a_abs / len > self.ctrl.blowup_threshold {
            let mut buf = u[0].to_vec();
            grid.inverse_in_place(&mut buf);
            let sup = buf.iter().fold(T::zero(), |m, z| m.max(z.re.abs()));
            if sup > self.ctrl.blowup_threshold {
                return Ok(Err(format!(
                    "sup |a| = {sup:e} exceeds threshold {:e} at t = {t_new}",
                    self.ctrl.blowup_threshold
                )));
            }
        }
        Ok(Ok((t_new, dt)))
    }
}

fn assemble<T: Real>(
    grid: &Arc<Grid<T>>,
    a: Vec<Complex<T>>,
    b: Vec<Complex<T>>,
    time: T,
    step_count: u64,
    last_dt: T,
) -> Result<SolverState<T>> {
    Ok(SolverState {
        a: Field::from_spectral(grid, a)?,
        b: Field::from_spectral(grid, b)?,
        time,
        step_count,
        last_dt,
    })
}

#[inline]
fn fac<T: Real>(e: &Option<Vec<T>>, m: usize) -> T {
    match e {
        Some(v) => v[m],
        None => T::one(),
    }
}

/// Full and half-step integrating factors; `None` when the coefficient vanishes.
fn propagators<T: Real>(frac: &[T], coeff: T, dt: T) -> (Option<Vec<T>>, Option<Vec<T>>) {
    if coeff == T::zero() {
        return (None, None);
    }
    let half = dt * T::lit(0.5);
    let full = frac.iter().map(|&s| (-coeff * s * dt).exp()).collect();
    let halfv = frac.iter().map(|&s| (-coeff * s * half).exp()).collect();
    (Some(full), Some(halfv))
}

fn stage<T: Real>(
    grid: &Grid<T>,
    s: &[Vec<Complex<T>>; 2],
    out: &mut [Vec<Complex<T>>; 2],
    z: &mut [Vec<Complex<T>>; 3],
) -> Result<Option<String>> {
    let [oa, ob] = out;
    match rhs_into(grid, &s[0], &s[1], oa, ob, z) {
        Ok(_) => Ok(None),
        Err(Error::NonFinite(w)) => Ok(Some(format!("non-finite values in {w}"))),
        Err(e) => Err(e),
    }
}

#[inline]
fn times_i<T: Real>(z: Complex<T>, s: T) -> Complex<T> {
    Complex::new(-z.im * s, z.re * s)
}

/// Nonlinear tendencies of `(a, b)` written into `(da, db)`.
///
/// Three inverse transforms carry the six real factors as complex pairs
/// `a_x + i a_y`, `b_x + i b_y`, `(Δa)_x + i (Δa)_y`; one forward transform
/// carries both products, which are then separated by conjugate symmetry.
pub(crate) fn rhs_into<T: Real>(
    grid: &Grid<T>,
    a: &[Complex<T>],
    b: &[Complex<T>],
    da: &mut [Complex<T>],
    db: &mut [Complex<T>],
    z: &mut [Vec<Complex<T>>; 3],
) -> Result<Speeds<T>> {
    let n = grid.n();
    let len = grid.len();
    let (k, ksq, keep) = (grid.k_odd(), grid.k_sq(), grid.keep());
    for zi in z.iter_mut() {
        zi.resize(len, Complex::default());
    }
    let [z1, z2, z3] = z;
    for i in 0..n {
        let kx = k[i];
        for j in 0..n {
            let m = i * n + j;
            if !(keep[i] && keep[j]) {
                z1[m] = Complex::default();
                z2[m] = Complex::default();
                z3[m] = Complex::default();
                continue;
            }
            let ky = k[j];
            // i kx f + i (i ky f) = i kx f - ky f
            let ga = times_i(a[m], kx) - a[m] * ky;
            let gb = times_i(b[m], kx) - b[m] * ky;
            z1[m] = ga;
            z2[m] = gb;
            z3[m] = ga * (-ksq[m]);
        }
    }
    grid.inverse_in_place(z1);
    grid.inverse_in_place(z2);
    grid.inverse_in_place(z3);
    let mut sp = Speeds { drift: T::zero(), slope: T::zero() };
    let mut finite = true;
    for m in 0..len {
        let (ax, ay) = (z1[m].re, z1[m].im);
        let (bx, by) = (z2[m].re, z2[m].im);
        let (lx, ly) = (z3[m].re, z3[m].im);
        // -(∇⊥b·∇a) with ∇⊥b = (-b_y, b_x); -(∇⊥a·∇Δa) with ∇⊥a = (-a_y, a_x)
        let fa = by * ax - bx * ay;
        let fb = ay * lx - ax * ly;
        finite &= fa.is_finite() && fb.is_finite();
        sp.drift = sp.drift.max(bx.hypot(by));
        sp.slope = sp.slope.max(ax.hypot(ay));
        z1[m] = Complex::new(fa, fb);
    }
    if !finite {
        return Err(Error::NonFinite("nonlinear products"));
    }
    grid.forward_in_place(z1);
    let spec = grid.spec();
    let half = T::lit(0.5);
    for i in 0..n {
        let mi = spec.mirror(i);
        for j in 0..n {
            let m = i * n + j;
            if !(keep[i] && keep[j]) {
                da[m] = Complex::default();
                db[m] = Complex::default();
                continue;
            }
            let p = z1[m];
            let q = z1[mi * n + spec.mirror(j)].conj();
            da[m] = (p + q) * half;
            // (p - q) / (2i)
            let d = (p - q) * half;
            db[m] = Complex::new(d.im, -d.re);
        }
    }
    // Both nonlinear terms are in divergence form, so their means vanish.
    da[0] = Complex::default();
    db[0] = Complex::default();
    Ok(sp)
}

use std::sync::Arc;

use rustfft::num_complex::Complex;

use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{Field, Grid};

/// The unknowns `(a, b)` with the clock.
#[derive(Clone, Debug)]
pub struct SolverState<T: Real> {
    pub a: Field<T>,
    pub b: Field<T>,
    pub time: T,
    pub step_count: u64,
    /// Size of the last step taken; zero before the first step.
    pub last_dt: T,
}

impl<T: Real> SolverState<T> {
    /// Initial state at time zero. Both fields get a spectral representation;
    /// any real samples they carry are kept.
    pub fn new(a: &Field<T>, b: &Field<T>) -> Result<Self> {
        a.check_same_grid(b)?;
        Ok(Self { a: a.forward()?, b: b.forward()?, time: T::zero(), step_count: 0, last_dt: T::zero() })
    }

    pub fn zeros(grid: &Arc<Grid<T>>) -> Self {
        Self {
            a: Field::zeros(grid),
            b: Field::zeros(grid),
            time: T::zero(),
            step_count: 0,
            last_dt: T::zero(),
        }
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        self.a.grid()
    }

    pub fn a_hat(&self) -> &[Complex<T>] {
        self.a.spectral_values().expect("solver fields carry coefficients")
    }

    pub fn b_hat(&self) -> &[Complex<T>] {
        self.b.spectral_values().expect("solver fields carry coefficients")
    }
}

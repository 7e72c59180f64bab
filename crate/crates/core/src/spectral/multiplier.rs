use std::sync::Arc;

use rustfft::num_complex::Complex;

use super::field::Field;
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Values of a Fourier symbol on the lattice, row-major.
#[derive(Clone, Debug)]
pub enum Symbol<T> {
    Real(Vec<T>),
    Complex(Vec<Complex<T>>),
}

/// A diagonal operator in spectral space: `(M f)^(k) = m(k) f^(k)`.
#[derive(Clone)]
pub struct Multiplier<T: Real> {
    grid: Arc<Grid<T>>,
    symbol: Symbol<T>,
}

impl<T: Real> Multiplier<T> {
    /// Real symbol from a function of `(k1, k2)`.
    pub fn from_real_fn(grid: &Arc<Grid<T>>, f: impl Fn(T, T) -> T) -> Self {
        let k = grid.k();
        let mut v = Vec::with_capacity(grid.len());
        for &k1 in k {
            for &k2 in k {
                v.push(f(k1, k2));
            }
        }
        Self { grid: grid.clone(), symbol: Symbol::Real(v) }
    }

    /// Real symbol from a function of `|k|^2`.
    pub fn radial(grid: &Arc<Grid<T>>, f: impl Fn(T) -> T) -> Self {
        let v = grid.k_sq().iter().map(|&q| f(q)).collect();
        Self { grid: grid.clone(), symbol: Symbol::Real(v) }
    }

    pub fn from_complex_fn(grid: &Arc<Grid<T>>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let k = grid.k();
        let mut v = Vec::with_capacity(grid.len());
        for &k1 in k {
            for &k2 in k {
                v.push(f(k1, k2));
            }
        }
        Self { grid: grid.clone(), symbol: Symbol::Complex(v) }
    }

    /// `coeff * |k|^(2 alpha)`, with the zero mode mapped to 0 for every alpha.
    pub fn fractional_laplacian(grid: &Arc<Grid<T>>, alpha: T, coeff: T) -> Result<Self> {
        check_alpha(alpha)?;
        check_coeff(coeff)?;
        Ok(Self::radial(grid, |q| if q == T::zero() { T::zero() } else { coeff * q.powf(alpha) }))
    }

    /// `exp(-coeff * |k|^(2 alpha) * dt)`, the exact propagator of `f_t = -coeff (-Δ)^alpha f`.
    pub fn heat(grid: &Arc<Grid<T>>, alpha: T, coeff: T, dt: T) -> Result<Self> {
        if !(alpha >= T::zero()) || !alpha.is_finite() {
            return Err(Error::param("alpha", format!("{alpha} must be a finite nonnegative order")));
        }
        check_coeff(coeff)?;
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::param("dt", format!("{dt} must be positive")));
        }
        Ok(Self::radial(grid, |q| {
            let s = if q == T::zero() { T::zero() } else { q.powf(alpha) };
            (-coeff * s * dt).exp()
        }))
    }

    /// `|k|^s`, zero at `k = 0`.
    pub fn riesz_power(grid: &Arc<Grid<T>>, s: T) -> Self {
        let half = s * T::lit(0.5);
        Self::radial(grid, |q| if q == T::zero() { T::zero() } else { q.powf(half) })
    }

    /// `(1 + |k|^2)^(s/2)`.
    pub fn bessel_power(grid: &Arc<Grid<T>>, s: T) -> Self {
        let half = s * T::lit(0.5);
        Self::radial(grid, |q| (T::one() + q).powf(half))
    }

    /// Indicator of the modes kept by the 2/3 rule.
    pub fn dealias_mask(grid: &Arc<Grid<T>>) -> Self {
        let n = grid.n();
        let v = (0..grid.len())
            .map(|m| if grid.keep()[m / n] && grid.keep()[m % n] { T::one() } else { T::zero() })
            .collect();
        Self { grid: grid.clone(), symbol: Symbol::Real(v) }
    }

    #[inline]
    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    #[inline]
    pub fn symbol(&self) -> &Symbol<T> {
        &self.symbol
    }

    /// Symbol value at storage position `m`.
    pub fn value(&self, m: usize) -> Complex<T> {
        match &self.symbol {
            Symbol::Real(v) => Complex::new(v[m], T::zero()),
            Symbol::Complex(v) => v[m],
        }
    }

    pub fn apply(&self, f: &Field<T>) -> Result<Field<T>> {
        if !self.grid.same_as(f.grid()) {
            return Err(Error::GridMismatch("multiplier and field live on different grids".into()));
        }
        let mut c = f.coeffs()?.into_owned();
        self.apply_in_place(&mut c);
        Field::from_spectral(f.grid(), c)
    }

    pub fn apply_in_place(&self, c: &mut [Complex<T>]) {
        match &self.symbol {
            Symbol::Real(v) => c.iter_mut().zip(v).for_each(|(z, &m)| *z = *z * m),
            Symbol::Complex(v) => c.iter_mut().zip(v).for_each(|(z, &m)| *z = *z * m),
        }
    }

    /// Pointwise product of symbols.
    pub fn compose(&self, other: &Multiplier<T>) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch("multipliers live on different grids".into()));
        }
        let symbol = match (&self.symbol, &other.symbol) {
            (Symbol::Real(a), Symbol::Real(b)) => {
                Symbol::Real(a.iter().zip(b).map(|(&x, &y)| x * y).collect())
            }
            _ => Symbol::Complex((0..self.grid.len()).map(|m| self.value(m) * other.value(m)).collect()),
        };
        Ok(Self { grid: self.grid.clone(), symbol })
    }
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::param("alpha", format!("{alpha} outside [0, 1]")));
    }
    Ok(())
}

fn check_coeff<T: Real>(coeff: T) -> Result<()> {
    if !(coeff >= T::zero()) || !coeff.is_finite() {
        return Err(Error::param("coeff", format!("{coeff} must be finite and nonnegative")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn composition_commutes() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(32).unwrap());
        let a = Multiplier::fractional_laplacian(&g, 0.3, 2.0).unwrap();
        let b = Multiplier::from_complex_fn(&g, |k1, k2| Complex::new(k2, k1 * k1));
        let ab = a.compose(&b).unwrap();
        let ba = b.compose(&a).unwrap();
        for m in 0..g.len() {
            let (x, y) = (ab.value(m), ba.value(m));
            assert!((x - y).norm() <= 1e-13 * x.norm().max(1e-300));
        }
    }

    #[test]
    fn alpha_range_checked() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(16).unwrap());
        assert!(Multiplier::fractional_laplacian(&g, 1.5, 1.0).is_err());
        assert!(Multiplier::fractional_laplacian(&g, -0.1, 1.0).is_err());
        assert!(Multiplier::fractional_laplacian(&g, 0.5, -1.0).is_err());
    }

    #[test]
    fn zero_mode_vanishes_even_for_alpha_zero() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(16).unwrap());
        let m = Multiplier::fractional_laplacian(&g, 0.0, 1.0).unwrap();
        assert_eq!(m.value(0).re, 0.0);
        assert_eq!(m.value(1).re, 1.0);
    }
}

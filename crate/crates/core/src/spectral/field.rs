use std::borrow::Cow;
use std::sync::Arc;

use rustfft::num_complex::Complex;

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which representations of a [`Field`] are populated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyncState {
    Real,
    Spectral,
    Both,
}

/// A real scalar field on a periodic grid, held in real space, in spectral
/// space, or both. Values are immutable once constructed.
#[derive(Clone)]
pub struct Field<T: Real> {
    grid: Arc<Grid<T>>,
    real: Option<Vec<T>>,
    spectral: Option<Vec<Complex<T>>>,
}

impl<T: Real> std::fmt::Debug for Field<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("grid", self.grid.spec())
            .field("sync", &self.sync_state())
            .finish()
    }
}

impl<T: Real> Field<T> {
    pub fn from_real(grid: &Arc<Grid<T>>, values: Vec<T>) -> Result<Self> {
        check_len(grid, values.len())?;
        Ok(Self { grid: grid.clone(), real: Some(values), spectral: None })
    }

    pub fn from_spectral(grid: &Arc<Grid<T>>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        check_len(grid, coeffs.len())?;
        Ok(Self { grid: grid.clone(), real: None, spectral: Some(coeffs) })
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn(grid: &Arc<Grid<T>>, f: impl Fn(T, T) -> T) -> Self {
        let spec = grid.spec();
        let n = spec.n();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = spec.coord(i);
            for j in 0..n {
                values.push(f(x, spec.coord(j)));
            }
        }
        Self { grid: grid.clone(), real: Some(values), spectral: None }
    }

    pub fn zeros(grid: &Arc<Grid<T>>) -> Self {
        let len = grid.len();
        Self {
            grid: grid.clone(),
            real: Some(vec![T::zero(); len]),
            spectral: Some(vec![Complex::default(); len]),
        }
    }

    #[inline]
    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn sync_state(&self) -> SyncState {
        match (&self.real, &self.spectral) {
            (Some(_), Some(_)) => SyncState::Both,
            (Some(_), None) => SyncState::Real,
            (None, Some(_)) => SyncState::Spectral,
            (None, None) => unreachable!("field without representation"),
        }
    }

    #[inline]
    pub fn real_values(&self) -> Option<&[T]> {
        self.real.as_deref()
    }

    #[inline]
    pub fn spectral_values(&self) -> Option<&[Complex<T>]> {
        self.spectral.as_deref()
    }

    /// Real-space samples, transforming if necessary.
    pub fn values(&self) -> Result<Cow<'_, [T]>> {
        match &self.real {
            Some(v) => Ok(Cow::Borrowed(v)),
            None => Ok(Cow::Owned(self.compute_real()?)),
        }
    }

    /// Spectral coefficients, transforming if necessary.
    pub fn coeffs(&self) -> Result<Cow<'_, [Complex<T>]>> {
        match &self.spectral {
            Some(c) => Ok(Cow::Borrowed(c)),
            None => Ok(Cow::Owned(self.compute_spectral()?)),
        }
    }

    /// Returns a copy with the spectral representation populated.
    pub fn forward(&self) -> Result<Self> {
        let spectral = match &self.spectral {
            Some(c) => c.clone(),
            None => self.compute_spectral()?,
        };
        Ok(Self { grid: self.grid.clone(), real: self.real.clone(), spectral: Some(spectral) })
    }

    /// Returns a copy with the real representation populated.
    pub fn inverse(&self) -> Result<Self> {
        let real = match &self.real {
            Some(v) => v.clone(),
            None => self.compute_real()?,
        };
        Ok(Self { grid: self.grid.clone(), real: Some(real), spectral: self.spectral.clone() })
    }

    pub fn into_real(self) -> Result<Vec<T>> {
        match self.real {
            Some(v) => Ok(v),
            None => Self { grid: self.grid, real: None, spectral: self.spectral }.compute_real(),
        }
    }

    pub fn into_spectral(self) -> Result<Vec<Complex<T>>> {
        match self.spectral {
            Some(c) => Ok(c),
            None => Self { grid: self.grid, real: self.real, spectral: None }.compute_spectral(),
        }
    }

    fn compute_spectral(&self) -> Result<Vec<Complex<T>>> {
        let real = self.real.as_ref().expect("real representation present");
        if real.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("forward transform input"));
        }
        let mut buf: Vec<Complex<T>> = real.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.grid.forward_in_place(&mut buf);
        Ok(buf)
    }

    fn compute_real(&self) -> Result<Vec<T>> {
        let coeffs = self.spectral.as_ref().expect("spectral representation present");
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("inverse transform input"));
        }
        let mut buf = coeffs.clone();
        self.grid.inverse_in_place(&mut buf);
        Ok(buf.into_iter().map(|z| z.re).collect())
    }

    pub fn check_same_grid(&self, other: &Field<T>) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid.spec(),
                other.grid.spec()
            )))
        }
    }

    /// Pointwise difference. Uses real samples when both sides carry them, so
    /// no transform is involved.
    pub fn sub(&self, other: &Field<T>) -> Result<Self> {
        self.check_same_grid(other)?;
        if let (Some(x), Some(y)) = (&self.real, &other.real) {
            let v = x.iter().zip(y).map(|(&p, &q)| p - q).collect();
            return Self::from_real(&self.grid, v);
        }
        let (x, y) = (self.coeffs()?, other.coeffs()?);
        let c = x.iter().zip(y.iter()).map(|(&p, &q)| p - q).collect();
        Self::from_spectral(&self.grid, c)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            grid: self.grid.clone(),
            real: self.real.as_ref().map(|v| v.iter().map(|&x| x * c).collect()),
            spectral: self.spectral.as_ref().map(|v| v.iter().map(|&z| z * c).collect()),
        }
    }

    /// Mean over the grid computed from real samples, or from the zero mode.
    pub fn mean(&self) -> Result<T> {
        let len = T::from_usize_lossy(self.grid.len());
        match (&self.real, &self.spectral) {
            (_, Some(c)) => Ok(c[0].re / len),
            (Some(v), None) => Ok(v.iter().copied().sum::<T>() / len),
            _ => unreachable!(),
        }
    }

    /// Largest violation of `c(-k) = conj c(k)` relative to the largest coefficient.
    pub fn conjugate_symmetry_defect(&self) -> Result<T> {
        let c = self.coeffs()?;
        let spec = self.grid.spec();
        let n = spec.n();
        let mut worst = T::zero();
        let mut scale = T::zero();
        for i in 0..n {
            let mi = spec.mirror(i);
            for j in 0..n {
                let z = c[i * n + j];
                let w = c[mi * n + spec.mirror(j)];
                worst = worst.max((z - w.conj()).norm());
                scale = scale.max(z.norm());
            }
        }
        Ok(if scale > T::zero() { worst / scale } else { T::zero() })
    }
}

fn check_len<T: Real>(grid: &Grid<T>, len: usize) -> Result<()> {
    if len != grid.len() {
        return Err(Error::GridMismatch(format!("{len} values for a grid of {} points", grid.len())));
    }
    Ok(())
}

/// Populates the spectral representation.
pub fn transform_forward<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    f.forward()
}

/// Populates the real representation.
pub fn transform_inverse<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    f.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    fn grid(n: usize) -> Arc<Grid<f64>> {
        Grid::new(GridSpec::with_default_width(n).unwrap())
    }

    #[test]
    fn constant_has_only_dc() {
        let g = grid(16);
        let f = Field::from_fn(&g, |_, _| 2.5).forward().unwrap();
        let c = f.spectral_values().unwrap();
        assert!((c[0].re - 2.5 * 256.0).abs() < 1e-10);
        assert!(c[1..].iter().all(|z| z.norm() < 1e-10));
        assert_eq!(f.sync_state(), SyncState::Both);
    }

    #[test]
    fn cosine_has_two_modes() {
        let g = grid(64);
        let f = Field::from_fn(&g, |x, _| (2.0 * x).cos()).forward().unwrap();
        let c = f.spectral_values().unwrap();
        let big: Vec<usize> = (0..c.len()).filter(|&m| c[m].norm() > 1e-9).collect();
        assert_eq!(big, vec![2 * 64, 62 * 64]);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = grid(16);
        assert!(matches!(Field::from_real(&g, vec![0.0; 10]), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn non_finite_rejected() {
        let g = grid(16);
        let mut v = vec![0.0; 256];
        v[7] = f64::NAN;
        let f = Field::from_real(&g, v).unwrap();
        assert!(matches!(f.forward(), Err(Error::NonFinite(_))));
    }

    #[test]
    fn mismatched_grids_detected() {
        let a = Field::zeros(&grid(16));
        let b = Field::zeros(&grid(32));
        assert!(a.sub(&b).is_err());
    }
}

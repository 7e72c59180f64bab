use std::sync::Arc;

use rustfft::num_complex::Complex;

use super::fft::Fft2;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Geometry of the periodic square `[-L, L)^2` sampled with `n` points per side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T> {
    n: usize,
    half_width: T,
}

impl<T: Real> GridSpec<T> {
    pub const MIN_N: usize = 16;

    pub fn new(n: usize, half_width: T) -> Result<Self> {
        if n < Self::MIN_N || n % 2 != 0 {
            return Err(Error::param("grid_n", format!("{n} must be even and >= {}", Self::MIN_N)));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::param("half_width", format!("{half_width} must be positive and finite")));
        }
        Ok(Self { n, half_width })
    }

    /// Grid on the default box `[-pi, pi)^2`.
    pub fn with_default_width(n: usize) -> Result<Self> {
        Self::new(n, T::PI())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn half_width(&self) -> T {
        self.half_width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dx(&self) -> T {
        (self.half_width + self.half_width) / T::from_usize_lossy(self.n)
    }

    /// Spacing of the wavenumber lattice, `pi / L`.
    #[inline]
    pub fn k_unit(&self) -> T {
        T::PI() / self.half_width
    }

    /// Cell measure used by every discrete integral.
    #[inline]
    pub fn cell_measure(&self) -> T {
        self.dx() * self.dx()
    }

    /// Coordinate of sample `i` along either axis.
    #[inline]
    pub fn coord(&self, i: usize) -> T {
        -self.half_width + T::from_usize_lossy(i) * self.dx()
    }

    /// Signed lattice index in `[-n/2, n/2)` of storage index `i`.
    #[inline]
    pub fn signed_index(&self, i: usize) -> isize {
        if i < self.n / 2 {
            i as isize
        } else {
            i as isize - self.n as isize
        }
    }

    /// Storage index of the mode `-j` given the storage index of `j`.
    #[inline]
    pub fn mirror(&self, i: usize) -> usize {
        (self.n - i) % self.n
    }

    /// Largest retained signed index under the 2/3 rule.
    #[inline]
    pub fn dealias_cutoff(&self) -> usize {
        self.n / 3
    }

    /// Largest wavenumber magnitude kept by the 2/3 rule on each axis.
    pub fn dealias_wavenumber(&self) -> T {
        T::from_usize_lossy(self.dealias_cutoff()) * self.k_unit()
    }

    pub fn with_f64(&self) -> GridSpec<f64> {
        GridSpec { n: self.n, half_width: self.half_width.as_f64() }
    }
}

/// A grid together with its wavenumber tables and transform plans. Shared by
/// every field that lives on it.
pub struct Grid<T: Real> {
    spec: GridSpec<T>,
    k: Vec<T>,
    k_odd: Vec<T>,
    k_sq: Vec<T>,
    keep: Vec<bool>,
    fft: Fft2<T>,
}

impl<T: Real> std::fmt::Debug for Grid<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Grid").field("spec", &self.spec).finish()
    }
}

impl<T: Real> Grid<T> {
    pub fn new(spec: GridSpec<T>) -> Arc<Self> {
        let n = spec.n;
        let unit = spec.k_unit();
        let k: Vec<T> = (0..n)
            .map(|i| T::from_isize(spec.signed_index(i)).unwrap() * unit)
            .collect();
        let mut k_odd = k.clone();
        k_odd[n / 2] = T::zero();
        let mut k_sq = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                k_sq.push(k[i] * k[i] + k[j] * k[j]);
            }
        }
        let cut = spec.dealias_cutoff() as isize;
        let keep = (0..n).map(|i| spec.signed_index(i).abs() <= cut).collect();
        Arc::new(Self { spec, k, k_odd, k_sq, keep, fft: Fft2::new(n) })
    }

    pub fn from_parts(n: usize, half_width: T) -> Result<Arc<Self>> {
        Ok(Self::new(GridSpec::new(n, half_width)?))
    }

    #[inline]
    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.spec.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.spec.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Wavenumber of storage index `i` along one axis.
    #[inline]
    pub fn k(&self) -> &[T] {
        &self.k
    }

    /// Wavenumbers with the Nyquist entry zeroed, for odd-order derivatives.
    #[inline]
    pub fn k_odd(&self) -> &[T] {
        &self.k_odd
    }

    /// `|k|^2` on the full lattice, row-major.
    #[inline]
    pub fn k_sq(&self) -> &[T] {
        &self.k_sq
    }

    /// Whether storage index `i` survives the 2/3 rule on its axis.
    #[inline]
    pub fn keep(&self) -> &[bool] {
        &self.keep
    }

    #[inline]
    pub fn is_kept(&self, idx: usize) -> bool {
        let n = self.n();
        self.keep[idx / n] && self.keep[idx % n]
    }

    /// Unnormalized forward transform in place.
    pub fn forward_in_place(&self, data: &mut [Complex<T>]) {
        self.fft.forward(data);
    }

    /// Inverse transform in place, including the `1/n^2` factor.
    pub fn inverse_in_place(&self, data: &mut [Complex<T>]) {
        self.fft.inverse(data);
    }

    pub fn same_as(&self, other: &Grid<T>) -> bool {
        std::ptr::eq(self, other) || self.spec == other.spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_small() {
        assert!(GridSpec::<f64>::new(15, 1.0).is_err());
        assert!(GridSpec::<f64>::new(14, 1.0).is_err());
        assert!(GridSpec::<f64>::new(16, 0.0).is_err());
        assert!(GridSpec::<f64>::new(16, f64::NAN).is_err());
        assert!(GridSpec::<f64>::new(16, 1.0).is_ok());
    }

    #[test]
    fn lattice_symmetric_except_nyquist() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(16).unwrap());
        for i in 0..16 {
            let m = g.spec().mirror(i);
            if i == 8 {
                assert_eq!(m, 8);
                assert_eq!(g.k()[i], -8.0);
            } else {
                assert_eq!(g.k()[m], -g.k()[i]);
            }
        }
        assert_eq!(g.spec().dx(), 2.0 * std::f64::consts::PI / 16.0);
        assert_eq!(g.k_odd()[8], 0.0);
    }

    #[test]
    fn dealias_mask_cutoff() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(48).unwrap());
        assert!(g.keep()[16]);
        assert!(!g.keep()[17]);
        assert!(g.keep()[48 - 16]);
        assert!(!g.keep()[48 - 17]);
    }
}

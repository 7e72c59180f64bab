use rustfft::num_complex::Complex;

use super::field::Field;
use super::multiplier::Multiplier;
use crate::error::Result;
use crate::scalar::Real;

/// Spectral differential operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivative {
    Dx,
    Dy,
    Gradient,
    PerpGradient,
    Laplacian,
    GradLaplacian,
}

impl Derivative {
    pub fn components(self) -> usize {
        match self {
            Derivative::Dx | Derivative::Dy | Derivative::Laplacian => 1,
            _ => 2,
        }
    }
}

fn map_coeffs<T: Real>(
    f: &Field<T>,
    op: impl Fn(usize, usize, Complex<T>) -> Complex<T>,
) -> Result<Field<T>> {
    let c = f.coeffs()?;
    let n = f.grid().n();
    let mut out = Vec::with_capacity(c.len());
    for i in 0..n {
        for j in 0..n {
            out.push(op(i, j, c[i * n + j]));
        }
    }
    Field::from_spectral(f.grid(), out)
}

#[inline]
fn times_i<T: Real>(z: Complex<T>, s: T) -> Complex<T> {
    Complex::new(-z.im * s, z.re * s)
}

/// Exact spectral differentiation. Odd-order derivatives drop the Nyquist mode.
/// Vector results are returned as `[x-component, y-component]`.
pub fn derivative<T: Real>(f: &Field<T>, which: Derivative) -> Result<Vec<Field<T>>> {
    let g = f.grid().clone();
    let (ko, ksq) = (g.k_odd(), g.k_sq());
    let n = g.n();
    let dx = |f: &Field<T>| map_coeffs(f, |i, _, z| times_i(z, ko[i]));
    let dy = |f: &Field<T>| map_coeffs(f, |_, j, z| times_i(z, ko[j]));
    Ok(match which {
        Derivative::Dx => vec![dx(f)?],
        Derivative::Dy => vec![dy(f)?],
        Derivative::Gradient => vec![dx(f)?, dy(f)?],
        Derivative::PerpGradient => {
            vec![map_coeffs(f, |_, j, z| times_i(z, -ko[j]))?, dx(f)?]
        }
        Derivative::Laplacian => vec![map_coeffs(f, |i, j, z| z * (-ksq[i * n + j]))?],
        Derivative::GradLaplacian => vec![
            map_coeffs(f, |i, j, z| times_i(z, -ko[i] * ksq[i * n + j]))?,
            map_coeffs(f, |i, j, z| times_i(z, -ko[j] * ksq[i * n + j]))?,
        ],
    })
}

pub fn dx<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    Ok(derivative(f, Derivative::Dx)?.remove(0))
}

pub fn dy<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    Ok(derivative(f, Derivative::Dy)?.remove(0))
}

pub fn laplacian<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    Ok(derivative(f, Derivative::Laplacian)?.remove(0))
}

pub fn gradient<T: Real>(f: &Field<T>) -> Result<[Field<T>; 2]> {
    pair(derivative(f, Derivative::Gradient)?)
}

/// `(-∂y f, ∂x f)`.
pub fn perp_gradient<T: Real>(f: &Field<T>) -> Result<[Field<T>; 2]> {
    pair(derivative(f, Derivative::PerpGradient)?)
}

pub fn grad_laplacian<T: Real>(f: &Field<T>) -> Result<[Field<T>; 2]> {
    pair(derivative(f, Derivative::GradLaplacian)?)
}

fn pair<T: Real>(mut v: Vec<Field<T>>) -> Result<[Field<T>; 2]> {
    let y = v.pop().expect("two components");
    let x = v.pop().expect("two components");
    Ok([x, y])
}

/// `∂x u + ∂y v`.
pub fn divergence<T: Real>(u: &[Field<T>; 2]) -> Result<Field<T>> {
    u[0].check_same_grid(&u[1])?;
    let ux = dx(&u[0])?;
    let vy = dy(&u[1])?;
    let (a, b) = (ux.coeffs()?, vy.coeffs()?);
    Field::from_spectral(u[0].grid(), a.iter().zip(b.iter()).map(|(&p, &q)| p + q).collect())
}

/// Zeroes every coefficient with `max(|j1|, |j2|) > n/3`.
pub fn dealias<T: Real>(f: &Field<T>) -> Result<Field<T>> {
    let keep = f.grid().keep().to_vec();
    map_coeffs(f, |i, j, z| if keep[i] && keep[j] { z } else { Complex::default() })
}

/// `coeff * (-Δ)^alpha f`.
pub fn fractional_laplacian<T: Real>(f: &Field<T>, alpha: T, coeff: T) -> Result<Field<T>> {
    Multiplier::fractional_laplacian(f.grid(), alpha, coeff)?.apply(f)
}

/// Exact solution operator of `f_t = -coeff (-Δ)^alpha f` over time `dt`.
pub fn heat_propagator<T: Real>(f: &Field<T>, alpha: T, coeff: T, dt: T) -> Result<Field<T>> {
    Multiplier::heat(f.grid(), alpha, coeff, dt)?.apply(f)
}

/// Pointwise product of two real-space fields.
pub fn product<T: Real>(a: &Field<T>, b: &Field<T>) -> Result<Field<T>> {
    a.check_same_grid(b)?;
    let (x, y) = (a.values()?, b.values()?);
    Field::from_real(a.grid(), x.iter().zip(y.iter()).map(|(&p, &q)| p * q).collect())
}

/// Pointwise dot product of two vector fields.
pub fn dot<T: Real>(u: &[Field<T>; 2], v: &[Field<T>; 2]) -> Result<Field<T>> {
    u[0].check_same_grid(&v[0])?;
    let (u0, u1, v0, v1) = (u[0].values()?, u[1].values()?, v[0].values()?, v[1].values()?);
    let out = (0..u0.len()).map(|m| u0[m] * v0[m] + u1[m] * v1[m]).collect();
    Field::from_real(u[0].grid(), out)
}

use super::field::Field;
use super::ops::{derivative, Derivative};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Weight family of a Sobolev norm: `|k|^s` or `(1 + |k|^2)^(s/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormFlavor {
    Homogeneous,
    Inhomogeneous,
}

pub const MIN_ORDER: f64 = -6.0;
pub const MAX_ORDER: f64 = 8.0;

/// Squared Sobolev norm summed over the given scalar fields.
fn sobolev_sq<T: Real>(fields: &[&Field<T>], s: T, flavor: NormFlavor) -> Result<T> {
    if !(s.as_f64() >= MIN_ORDER && s.as_f64() <= MAX_ORDER) {
        return Err(Error::param("s", format!("order {s} outside [{MIN_ORDER}, {MAX_ORDER}]")));
    }
    let half = s * T::lit(0.5);
    let mut total = T::zero();
    for f in fields {
        let grid = f.grid();
        let c = f.coeffs()?;
        let ksq = grid.k_sq();
        if flavor == NormFlavor::Homogeneous && s < T::zero() {
            let energy: T = c.iter().map(|z| z.norm_sqr()).sum();
            if c[0].norm() > T::lit(1e-10) * energy.sqrt() {
                return Err(Error::IllDefinedNorm(format!(
                    "homogeneous order {s} of a field with nonzero mean"
                )));
            }
        }
        let mut acc = T::zero();
        match flavor {
            NormFlavor::Homogeneous if s == T::zero() => {
                acc = c.iter().map(|z| z.norm_sqr()).sum();
            }
            NormFlavor::Homogeneous => {
                for (z, &q) in c.iter().zip(ksq) {
                    if q > T::zero() {
                        acc = acc + q.powf(s) * z.norm_sqr();
                    }
                }
            }
            NormFlavor::Inhomogeneous => {
                for (z, &q) in c.iter().zip(ksq) {
                    acc = acc + (T::one() + q).powf(half + half) * z.norm_sqr();
                }
            }
        }
        let len = T::from_usize_lossy(grid.len());
        total = total + acc * grid.spec().cell_measure() / len;
    }
    Ok(total)
}

/// Discrete Sobolev norm, normalized so that order 0 equals the real-space L² norm.
pub fn sobolev_norm<T: Real>(f: &Field<T>, s: T, flavor: NormFlavor) -> Result<T> {
    Ok(sobolev_sq(&[f], s, flavor)?.sqrt())
}

/// Sobolev norm of a vector field (root of the summed squares of its components).
pub fn sobolev_norm_vector<T: Real>(u: &[Field<T>; 2], s: T, flavor: NormFlavor) -> Result<T> {
    u[0].check_same_grid(&u[1])?;
    Ok(sobolev_sq(&[&u[0], &u[1]], s, flavor)?.sqrt())
}

/// Real-space discrete L² norm.
pub fn l2_norm<T: Real>(f: &Field<T>) -> Result<T> {
    let v = f.values()?;
    let sum: T = v.iter().map(|&x| x * x).sum();
    Ok((sum * f.grid().spec().cell_measure()).sqrt())
}

pub fn l2_norm_vector<T: Real>(u: &[Field<T>; 2]) -> Result<T> {
    let (a, b) = (l2_norm(&u[0])?, l2_norm(&u[1])?);
    Ok((a * a + b * b).sqrt())
}

fn max_abs<T: Real>(f: &Field<T>) -> Result<T> {
    Ok(f.values()?.iter().fold(T::zero(), |m, &x| m.max(x.abs())))
}

/// Largest absolute value of `f` and, for `order` 1 or 2, of all its
/// first (and second) partial derivatives.
pub fn sup_norm<T: Real>(f: &Field<T>, order: u32) -> Result<T> {
    if order > 2 {
        return Err(Error::param("order", format!("{order} not in {{0, 1, 2}}")));
    }
    let mut m = max_abs(f)?;
    if order >= 1 {
        for d in derivative(f, Derivative::Gradient)? {
            m = m.max(max_abs(&d)?);
            if order == 2 {
                for dd in derivative(&d, Derivative::Gradient)? {
                    m = m.max(max_abs(&dd)?);
                }
            }
        }
    }
    Ok(m)
}

/// Componentwise [`sup_norm`] of a vector field.
pub fn sup_norm_vector<T: Real>(u: &[Field<T>; 2], order: u32) -> Result<T> {
    Ok(sup_norm(&u[0], order)?.max(sup_norm(&u[1], order)?))
}

/// Largest pointwise Euclidean length of a vector field.
pub fn sup_magnitude<T: Real>(u: &[Field<T>; 2]) -> Result<T> {
    let (x, y) = (u[0].values()?, u[1].values()?);
    Ok(x.iter().zip(y.iter()).fold(T::zero(), |m, (&p, &q)| m.max(p.hypot(q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid, GridSpec};

    #[test]
    fn sine_norm_ratio() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(32).unwrap());
        let f = Field::from_fn(&g, |x, _| (2.0 * x).sin());
        let h1 = sobolev_norm(&f, 1.0, NormFlavor::Homogeneous).unwrap();
        let l2 = sobolev_norm(&f, 0.0, NormFlavor::Homogeneous).unwrap();
        assert!((h1 / l2 - 2.0).abs() < 1e-13);
        assert!((l2 - l2_norm(&f).unwrap()).abs() < 1e-13 * l2);
        // ∫ sin^2(2x) over the box is 2 pi^2
        assert!((l2 * l2 - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-10);
    }

    #[test]
    fn negative_order_needs_zero_mean() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(16).unwrap());
        let f = Field::from_fn(&g, |x, _| 1.0 + x.cos());
        assert!(matches!(
            sobolev_norm(&f, -1.0, NormFlavor::Homogeneous),
            Err(Error::IllDefinedNorm(_))
        ));
        assert!(sobolev_norm(&f, -1.0, NormFlavor::Inhomogeneous).is_ok());
        assert!(sobolev_norm(&f, 9.0, NormFlavor::Inhomogeneous).is_err());
    }

    #[test]
    fn sup_of_cosine() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(32).unwrap());
        let f = Field::from_fn(&g, |x, _| x.cos());
        assert!((sup_norm(&f, 1).unwrap() - 1.0).abs() < 1e-12);
        let z = Field::zeros(&g);
        assert_eq!(sup_norm(&z, 2).unwrap(), 0.0);
    }
}

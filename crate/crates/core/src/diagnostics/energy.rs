use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{sobolev_norm, Field, NormFlavor};

/// `‖∇a‖²_2 + ‖b‖²_2`.
pub fn energy_functional<T: Real>(a: &Field<T>, b: &Field<T>) -> Result<T> {
    a.check_same_grid(b)?;
    let ga = sobolev_norm(a, T::one(), NormFlavor::Homogeneous)?;
    let lb = sobolev_norm(b, T::zero(), NormFlavor::Homogeneous)?;
    Ok(ga * ga + lb * lb)
}

/// `a - ā`, pointwise.
pub fn error_field<T: Real>(a: &Field<T>, abar: &Field<T>) -> Result<Field<T>> {
    a.sub(abar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid, GridSpec};

    #[test]
    fn sine_energy() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(32).unwrap());
        let a = Field::from_fn(&g, |x, _| x.sin());
        let e = energy_functional(&a, &Field::zeros(&g)).unwrap();
        assert!((e - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-11);
        assert_eq!(energy_functional(&Field::zeros(&g), &Field::zeros(&g)).unwrap(), 0.0);
    }

    #[test]
    fn error_of_identical_fields_is_zero() {
        let g = Grid::new(GridSpec::<f64>::with_default_width(16).unwrap());
        let a = Field::from_fn(&g, |x, y| (x * y).sin());
        let e = error_field(&a, &a.clone()).unwrap();
        assert!(e.real_values().unwrap().iter().all(|&v| v == 0.0));
    }
}

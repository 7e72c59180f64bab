use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// Value and first three derivatives of a function of one variable,
/// propagated through arithmetic by the chain rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3<T> {
    pub v: T,
    pub d1: T,
    pub d2: T,
    pub d3: T,
}

impl<T: Real> Jet3<T> {
    pub fn constant(v: T) -> Self {
        Self { v, d1: T::zero(), d2: T::zero(), d3: T::zero() }
    }

    /// The identity function evaluated at `x`.
    pub fn variable(x: T) -> Self {
        Self { v: x, d1: T::one(), d2: T::zero(), d3: T::zero() }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    /// Composes an outer function, given by its derivatives at `self.v`, with `self`.
    pub fn compose(self, o0: T, o1: T, o2: T, o3: T) -> Self {
        let (f1, f2, f3) = (self.d1, self.d2, self.d3);
        let three = T::lit(3.0);
        Self {
            v: o0,
            d1: o1 * f1,
            d2: o2 * f1 * f1 + o1 * f2,
            d3: o3 * f1 * f1 * f1 + three * o2 * f1 * f2 + o1 * f3,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.compose(e, e, e, e)
    }

    pub fn recip(self) -> Self {
        let r = T::one() / self.v;
        let r2 = r * r;
        self.compose(r, -r2, T::lit(2.0) * r2 * r, T::lit(-6.0) * r2 * r2)
    }

    pub fn scale(self, c: T) -> Self {
        Self { v: self.v * c, d1: self.d1 * c, d2: self.d2 * c, d3: self.d3 * c }
    }

    pub fn div(self, other: Self) -> Self {
        self * other.recip()
    }
}

impl<T: Real> Add for Jet3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2, d3: self.d3 + o.d3 }
    }
}

impl<T: Real> Sub for Jet3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2, d3: self.d3 - o.d3 }
    }
}

impl<T: Real> Neg for Jet3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Jet3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = T::lit(3.0);
        Self {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + T::lit(2.0) * self.d1 * o.d1 + self.v * o.d2,
            d3: self.d3 * o.v + three * self.d2 * o.d1 + three * self.d1 * o.d2 + self.v * o.d3,
        }
    }
}

impl<T: Real> Add<T> for Jet3<T> {
    type Output = Self;
    fn add(self, c: T) -> Self {
        Self { v: self.v + c, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_square() {
        // d/dx exp(x^2) = 2x e, d2 = (2 + 4x^2) e, d3 = (12x + 8x^3) e
        let x = 0.7f64;
        let j = Jet3::variable(x);
        let f = (j * j).exp();
        let e = (x * x).exp();
        assert!((f.d1 - 2.0 * x * e).abs() < 1e-14);
        assert!((f.d2 - (2.0 + 4.0 * x * x) * e).abs() < 1e-13);
        assert!((f.d3 - (12.0 * x + 8.0 * x * x * x) * e).abs() < 1e-12);
    }

    #[test]
    fn reciprocal() {
        let x = 1.3f64;
        let r = Jet3::variable(x).recip();
        assert!((r.d1 + 1.0 / (x * x)).abs() < 1e-15);
        assert!((r.d2 - 2.0 / x.powi(3)).abs() < 1e-14);
        assert!((r.d3 + 6.0 / x.powi(4)).abs() < 1e-14);
    }
}

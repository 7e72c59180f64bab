//! Periodic-grid Fourier infrastructure.

mod fft;
mod field;
mod grid;
mod multiplier;
mod norms;
mod ops;

pub use field::{transform_forward, transform_inverse, Field, SyncState};
pub use grid::{Grid, GridSpec};
pub use multiplier::{Multiplier, Symbol};
pub use norms::{
    l2_norm, l2_norm_vector, sobolev_norm, sobolev_norm_vector, sup_magnitude, sup_norm,
    sup_norm_vector, NormFlavor, MAX_ORDER, MIN_ORDER,
};
pub use ops::{
    dealias, derivative, divergence, dot, dx, dy, fractional_laplacian, grad_laplacian, gradient,
    heat_propagator, laplacian, perp_gradient, product, Derivative,
};

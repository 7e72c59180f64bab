//! Pseudo-spectral laboratory for the 2.5-D electron MHD system with
//! fractional resistivity
//!
//! ```text
//! a_t + ∇⊥b·∇a  + μ(−Δ)^α a = 0
//! b_t + ∇⊥a·∇Δa + ν(−Δ)^α b = 0
//! ```
//!
//! on a periodic square, together with the norm-inflation initial data, the
//! closed-form sheared approximation, and the experiments that measure Sobolev
//! norm growth.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! experiment layer works in `f64`.

pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod io;
pub mod profiles;
pub mod scalar;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use rustfft::num_complex::Complex;
pub use scalar::Real;

pub type Field64 = spectral::Field<f64>;
pub type Field32 = spectral::Field<f32>;
pub type Grid64 = spectral::Grid<f64>;
pub type Grid32 = spectral::Grid<f32>;
pub type GridSpec64 = spectral::GridSpec<f64>;
pub type GridSpec32 = spectral::GridSpec<f32>;


pub type Solver64 = solver::Solver<f64>;

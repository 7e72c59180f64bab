//! Closed-form objects: radial profiles, initial data, the sheared
//! approximate solution and its velocity, and the inflation time.

mod bump;
mod data;
mod jet;
mod params;
pub mod resolution;
mod transport;

pub use bump::{make_g, make_h, make_h_scaled, BumpProfile, H_SCALE};
pub use data::{
    boundary_leakage, build_initial_data, eval_abar, eval_ubar, orthogonality_ratio,
    orthogonality_ratio_of, DataFamily, InitialData, Shear, Ubar,
};
pub use jet::Jet3;
pub use params::{tstar, ModelParams, Window};
pub use transport::semi_lagrangian_abar;

//! Time integration of the evolution system on the periodic grid.

mod control;
mod integrator;
mod state;

pub use control::StepControl;
pub use integrator::{RunStatus, Solver, Speeds, Stepped};
pub use state::SolverState;

//! Integrating-factor RK4 time stepping for `u_t - R_1 Delta u + u u_{x_1} = 0`.

mod config;
mod soliton;
mod stepper;
mod trajectory;

pub use config::{default_snapshot_every, SolverConfig, DEFAULT_DEALIAS_FRACTION};
pub use soliton::{
    bo1d_soliton, recentered_shape_error, soliton_profile, soliton_residual, SOLITON_BOUNDARY_TOLERANCE,
};
pub use stepper::{linear_generator, nonlinearity, step_ifrk4, Stepper};
pub use trajectory::{evolve, evolve_with, run, RunOutcome, Trajectory};

#[cfg(test)]
mod tests;

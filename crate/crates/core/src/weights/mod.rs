//! Weights, conserved quantities, moments and the functionals built on them.

mod bounds;
mod conserved;
mod diagnostics;
mod moments;
mod weight;

pub use bounds::{gamma_commutation_defect, weight_bound_constants, WeightBoundReport};
pub use conserved::{conserved, Conserved};
pub use diagnostics::{write_csv, DiagnosticsRecord, DiagnosticsSettings, BOUNDARY_GUARD};
pub use moments::{
    c_functional, cumulative_trapezoid, fit_line, moment, moment_identity_residual, moment_law, profile_moment, t_star,
    zero_crossing, CFunctional, LineFit, MomentLaw,
};
pub use weight::{bracket_weight, japanese_bracket, truncated_radial, weighted_l2, TruncatedWeight, MIN_TRUNCATION};

#[cfg(test)]
mod tests;

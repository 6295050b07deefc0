//! Pseudo-spectral laboratory for `u_t - R_1 Delta u + u u_{x_1} = 0` on periodic boxes in
//! one to three dimensions.
//!
//! Everything is built on lattice Fourier multipliers: [`spectral`] provides grids,
//! transforms and operators, [`solver`] integrates the equation, [`weights`] computes
//! conserved quantities, moments and weighted norms, and [`probes`] holds the numerical
//! checks of the operator calculus.

pub mod error;
pub mod multi_index;
pub mod probes;
pub mod sampling;
pub mod solver;
pub mod spectral;
pub mod weights;

pub use error::{HboError, Result};
pub use multi_index::MultiIndex;
pub use spectral::{Grid, Multiplier, RealField, SpectralField};

//! Grids, transforms and the Fourier-multiplier calculus.

pub mod fft;
mod field;
mod grid;
mod multiplier;
pub mod ops;

pub use field::{RealField, SpectralField};
pub use grid::{norm3, Grid};
pub use multiplier::{apply_multiplier, Multiplier};
pub use ops::{bessel, d_riesz_beta, fractional, partial, riesz, semigroup};

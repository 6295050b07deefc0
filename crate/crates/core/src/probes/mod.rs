//! Numerical probes of the operator calculus: symbol derivatives, decay at the
//! origin of frequency space, commutator estimates, Stein derivatives and the
//! identity suite.

mod commutator;
mod cone;
mod freq;
mod identities;
mod stein;
mod symbols;

pub use commutator::{commutator_probe, CommutatorReport};
pub use cone::{cone_probe, ConeParams, ConeProbeReport, MIN_CONE_SAMPLES};
pub use freq::freq_derivative;
pub use identities::{identity_suite, IdentityCheck, IdentityReport, SUITE_HALF_LENGTH};
pub use stein::{stein_derivative, stein_norm, STEIN_MAX_POINTS};
pub use symbols::{f_operator, f_operator_at, symbol_derivative};

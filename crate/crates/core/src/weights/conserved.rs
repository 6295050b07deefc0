use serde::{Deserialize, Serialize};

use crate::spectral::ops::fractional_multiplier;
use crate::spectral::RealField;

/// The three conserved quantities of the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conserved {
    /// `I = int u`.
    pub integral: f64,
    /// `M = int u^2`.
    pub l2_squared: f64,
    /// `H = int |(-Delta)^{1/4} u|^2 - u^3 / 3`.
    pub hamiltonian: f64,
}

pub fn conserved(u: &RealField) -> Conserved {
    let grid = *u.grid();
    let vol = grid.cell_volume();
    let uh = u.forward();
    // ||D^{1/2} u||^2 = (2L)^{-d} sum |xi| |u^|^2
    let m = fractional_multiplier(grid, 1.0).expect("finite symbol");
    let box_volume = (2.0 * grid.half_length()).powi(grid.dim() as i32);
    let kinetic: f64 = uh
        .coeffs()
        .iter()
        .zip(m.values())
        .map(|(c, s)| s.re * c.norm_sqr())
        .sum::<f64>()
        / box_volume;
    let cubic: f64 = u.values().iter().map(|v| v * v * v).sum::<f64>() * vol;
    Conserved {
        integral: u.integral(),
        l2_squared: u.values().iter().map(|v| v * v).sum::<f64>() * vol,
        hamiltonian: kinetic - cubic / 3.0,
    }
}

//! Multiplier operators: derivatives, Riesz transforms, `|grad|^s`, `<grad>^s`,
//! the operators `D_{R_l}^beta` and the linear group `e^{t R_1 Delta}`.

use num_complex::Complex64;

use super::field::{RealField, SpectralField};
use super::grid::{norm3, Grid};
use super::multiplier::Multiplier;
use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn apply_real(f: &RealField, m: &Multiplier) -> Result<RealField> {
    Ok(m.apply(&f.forward())?.inverse())
}

/// `(i xi)^beta`.
pub fn derivative_multiplier(grid: Grid, beta: &MultiIndex) -> Result<Multiplier> {
    beta.check_dim(grid.dim())?;
    let beta = *beta;
    let zero = if beta.is_zero() { ONE } else { ZERO };
    Multiplier::from_symbol(
        grid,
        move |xi| (0..3).fold(ONE, |acc, a| acc * (I * xi[a]).powu(beta.get(a))),
        zero,
    )
}

/// `-i xi_l / |xi|`, zero at the origin.
pub fn riesz_multiplier(grid: Grid, axis: usize) -> Result<Multiplier> {
    grid.check_axis(axis)?;
    Multiplier::from_symbol(grid, move |xi| -I * xi[axis] / norm3(xi), ZERO)
}

/// `|xi|^s`, zero at the origin.
pub fn fractional_multiplier(grid: Grid, s: f64) -> Result<Multiplier> {
    Multiplier::from_real_symbol(grid, move |xi| norm3(xi).powf(s), 0.0)
}

/// `(1 + |xi|^2)^{s/2}`.
pub fn bessel_multiplier(grid: Grid, s: f64) -> Result<Multiplier> {
    Multiplier::from_real_symbol(
        grid,
        move |xi| (1.0 + xi.iter().map(|v| v * v).sum::<f64>()).powf(s / 2.0),
        1.0,
    )
}

/// Generator `i xi_1 |xi|` of the linear flow.
pub fn dispersion_multiplier(grid: Grid) -> Result<Multiplier> {
    Multiplier::from_symbol(grid, |xi| I * xi[0] * norm3(xi), ZERO)
}

/// `e^{i t xi_1 |xi|}`, built as the exponential of the symmetrized generator.
pub fn semigroup_multiplier(grid: Grid, t: f64) -> Result<Multiplier> {
    Ok(dispersion_multiplier(grid)?.map(|g| (g * t).exp()))
}

/// `d^beta_xi (xi_l / |xi|)` for `|beta| <= 3`, from hand-differentiated closed forms.
pub fn riesz_kernel_derivative(xi: &[f64; 3], l: usize, beta: &MultiIndex) -> Result<f64> {
    let axes = beta.axes();
    let r = norm3(xi);
    if r == 0.0 {
        return Err(HboError::ZeroFrequency);
    }
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let x = |a: usize| xi[a];
    let value = match axes.as_slice() {
        [] => x(l) / r,
        &[a] => d(l, a) / r - x(l) * x(a) / r.powi(3),
        &[a, b] => {
            -(d(l, a) * x(b) + d(l, b) * x(a) + d(a, b) * x(l)) / r.powi(3) + 3.0 * x(l) * x(a) * x(b) / r.powi(5)
        }
        &[a, b, c] => {
            -(d(l, a) * d(b, c) + d(l, b) * d(a, c) + d(l, c) * d(a, b)) / r.powi(3)
                + 3.0
                    * (d(l, a) * x(b) * x(c)
                        + d(l, b) * x(a) * x(c)
                        + d(l, c) * x(a) * x(b)
                        + d(a, b) * x(l) * x(c)
                        + d(a, c) * x(l) * x(b)
                        + d(b, c) * x(l) * x(a))
                    / r.powi(5)
                - 15.0 * x(l) * x(a) * x(b) * x(c) / r.powi(7)
        }
        _ => return Err(HboError::UnsupportedMultiIndex(beta.components().to_vec())),
    };
    Ok(value)
}

/// Symbol of `D_{R_l}^beta`: `i^{-|beta|} d^beta_xi (-i xi_l / |xi|)`.
pub fn d_riesz_beta_symbol(xi: &[f64; 3], l: usize, beta: &MultiIndex) -> Result<Complex64> {
    let prefactor = -I * I.powi(-(beta.order() as i32));
    Ok(prefactor * riesz_kernel_derivative(xi, l, beta)?)
}

pub fn d_riesz_beta_multiplier(grid: Grid, l: usize, beta: &MultiIndex) -> Result<Multiplier> {
    grid.check_axis(l)?;
    beta.check_dim(grid.dim())?;
    if beta.order() > 3 {
        return Err(HboError::UnsupportedMultiIndex(beta.components().to_vec()));
    }
    let beta = *beta;
    Multiplier::from_symbol(
        grid,
        move |xi| d_riesz_beta_symbol(xi, l, &beta).expect("origin excluded"),
        ZERO,
    )
}

/// `d^beta f`.
pub fn partial(f: &RealField, beta: &MultiIndex) -> Result<RealField> {
    apply_real(f, &derivative_multiplier(*f.grid(), beta)?)
}

/// Riesz transform `R_l` (0-based axis).
pub fn riesz(f: &RealField, axis: usize) -> Result<RealField> {
    apply_real(f, &riesz_multiplier(*f.grid(), axis)?)
}

/// `|grad|^s = (-Delta)^{s/2}`; negative orders need zero-mean input.
pub fn fractional(f: &RealField, s: f64) -> Result<RealField> {
    if s < 0.0 {
        f.require_zero_mean()?;
    }
    apply_real(f, &fractional_multiplier(*f.grid(), s)?)
}

/// `J^s = (1 - Delta)^{s/2}`.
pub fn bessel(f: &RealField, s: f64) -> Result<RealField> {
    apply_real(f, &bessel_multiplier(*f.grid(), s)?)
}

/// `D_{R_l}^beta f`; needs zero-mean input when `|beta| >= 1`.
pub fn d_riesz_beta(f: &RealField, l: usize, beta: &MultiIndex) -> Result<RealField> {
    let m = d_riesz_beta_multiplier(*f.grid(), l, beta)?;
    if beta.order() > 0 {
        f.require_zero_mean()?;
    }
    apply_real(f, &m)
}

/// Linear flow `e^{t R_1 Delta} f`, i.e. the multiplier `e^{i t xi_1 |xi|}`.
pub fn semigroup(f: &RealField, t: f64) -> Result<RealField> {
    apply_real(f, &semigroup_multiplier(*f.grid(), t)?)
}

pub fn semigroup_spectral(f: &SpectralField, t: f64) -> Result<SpectralField> {
    semigroup_multiplier(*f.grid(), t)?.apply(f)
}

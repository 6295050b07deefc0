use crate::error::{HboError, Result};
use crate::spectral::ops::{derivative_multiplier, dispersion_multiplier};
use crate::spectral::{Grid, RealField};
use crate::MultiIndex;

/// Largest boundary/peak ratio accepted for the algebraically decaying soliton.
pub const SOLITON_BOUNDARY_TOLERANCE: f64 = 1e-4;

/// `4c / (1 + c^2 (x - x0)^2)`.
pub fn soliton_profile(c: f64, x0: f64, x: f64) -> f64 {
    4.0 * c / (1.0 + c * c * (x - x0).powi(2))
}

/// The one-dimensional traveling wave of speed `c` centered at `x0`.
pub fn bo1d_soliton(c: f64, x0: f64, grid: Grid) -> Result<RealField> {
    if grid.dim() != 1 {
        return Err(HboError::InvalidParameter(format!(
            "soliton needs d = 1, got d = {}",
            grid.dim()
        )));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(HboError::InvalidParameter(format!("speed c = {c} must be positive")));
    }
    let q = RealField::from_fn(grid, |x| soliton_profile(c, x0, x[0]));
    let ratio = q.boundary_ratio();
    if ratio > SOLITON_BOUNDARY_TOLERANCE {
        return Err(HboError::BoundaryGuard {
            ratio,
            threshold: SOLITON_BOUNDARY_TOLERANCE,
        });
    }
    Ok(q)
}

/// L2 norm of `-c Q' - R_1 Delta Q + Q Q'` for the sampled profile.
pub fn soliton_residual(c: f64, x0: f64, grid: Grid) -> Result<f64> {
    let q = bo1d_soliton(c, x0, grid)?;
    let qh = q.forward();
    let dq = derivative_multiplier(grid, &MultiIndex::unit(0))?.apply(&qh)?.inverse();
    let lin = dispersion_multiplier(grid)?.apply(&qh)?.inverse();
    let values: Vec<f64> = (0..grid.len())
        .map(|i| -c * dq.values()[i] - lin.values()[i] + q.values()[i] * dq.values()[i])
        .collect();
    Ok(RealField::new(grid, values)?.l2_norm())
}

/// `min_s ||u - Q(. - s)|| / ||Q||` over shifts within `window` of `guess`.
///
/// Golden-section search; the profile is sampled analytically at each trial shift.
pub fn recentered_shape_error(u: &RealField, c: f64, guess: f64, window: f64) -> Result<(f64, f64)> {
    let grid = *u.grid();
    let reference = RealField::from_fn(grid, |x| soliton_profile(c, 0.0, x[0])).l2_norm();
    let misfit = |s: f64| {
        let diff: f64 = (0..grid.len())
            .map(|i| (u.values()[i] - soliton_profile(c, s, grid.coordinate(i))).powi(2))
            .sum();
        (diff * grid.dx()).sqrt()
    };
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (guess - window, guess + window);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (misfit(x1), misfit(x2));
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = misfit(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = misfit(x2);
        }
    }
    let s = 0.5 * (a + b);
    Ok((misfit(s) / reference, s))
}

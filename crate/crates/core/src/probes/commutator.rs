use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::spectral::ops::{d_riesz_beta_multiplier, derivative_multiplier, riesz_multiplier};
use crate::spectral::{Grid, RealField};

/// Both sides of the Riesz commutator estimate for one `(a, f, alpha)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub alpha: MultiIndex,
    pub l: usize,
    /// Lebesgue exponent; only `2` is supported.
    pub p: f64,
    pub lhs_norm: f64,
    /// `sum_{|beta| = |alpha|} ||d^beta a||_inf ||f||_2`.
    pub rhs_factor: f64,
    pub ratio: f64,
    /// Set when `a` is constant: both sides vanish and the ratio is reported as zero.
    pub degenerate: bool,
    pub grid: Grid,
}

fn max_abs(f: &RealField) -> f64 {
    f.max_abs()
}

/// `||R_l(a d^alpha f) - a R_l d^alpha f - sum_{1 <= |beta| < |alpha|} d^beta a D_{R_l}^beta d^alpha f / beta!||_2`
/// against `sum_{|beta| = |alpha|} ||d^beta a||_inf ||f||_2`.
pub fn commutator_probe(a: &RealField, f: &RealField, alpha: &MultiIndex, l: usize) -> Result<CommutatorReport> {
    a.check_grid(f)?;
    let grid = *a.grid();
    grid.check_axis(l)?;
    alpha.check_dim(grid.dim())?;
    let order = alpha.order();
    if order == 0 || order > 3 || (order == 3 && !alpha.is_pure()) {
        return Err(HboError::UnsupportedMultiIndex(alpha.components().to_vec()));
    }
    f.require_zero_mean()?;

    if a.values().iter().all(|&v| v == a.values()[0]) {
        return Ok(CommutatorReport {
            alpha: *alpha,
            l,
            p: 2.0,
            lhs_norm: 0.0,
            rhs_factor: 0.0,
            ratio: 0.0,
            degenerate: true,
            grid,
        });
    }

    let fh = f.forward();
    let ah = a.forward();
    let riesz = riesz_multiplier(grid, l)?;
    let df_hat = derivative_multiplier(grid, alpha)?.apply(&fh)?;
    let df = df_hat.inverse();
    let mut lhs =
        &riesz.apply(&a.pointwise(&df)?.forward())?.inverse() - &a.pointwise(&riesz.apply(&df_hat)?.inverse())?;
    for k in 1..order {
        for beta in MultiIndex::of_order(k, grid.dim()) {
            let da = derivative_multiplier(grid, &beta)?.apply(&ah)?.inverse();
            let term = d_riesz_beta_multiplier(grid, l, &beta)?.apply(&df_hat)?.inverse();
            lhs = &lhs - &(&da.pointwise(&term)? * beta.factorial().recip());
        }
    }
    let rhs_factor = MultiIndex::of_order(order, grid.dim())
        .iter()
        .map(|beta| Ok(max_abs(&derivative_multiplier(grid, beta)?.apply(&ah)?.inverse())))
        .sum::<Result<f64>>()?
        * f.l2_norm();
    let lhs_norm = lhs.l2_norm();
    Ok(CommutatorReport {
        alpha: *alpha,
        l,
        p: 2.0,
        lhs_norm,
        rhs_factor,
        ratio: if rhs_factor > 0.0 { lhs_norm / rhs_factor } else { 0.0 },
        degenerate: false,
        grid,
    })
}

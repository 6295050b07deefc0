use serde::{Deserialize, Serialize};

use super::freq::freq_derivative;
use super::symbols::f_operator;
use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::spectral::ops::semigroup;
use crate::spectral::{norm3, RealField};
use crate::weights::fit_line;

/// Fewest lattice points a cone fit may use.
pub const MIN_CONE_SAMPLES: usize = 10;

/// Cone `|xi|^4 <= ratio_pow4 |xi~|^4`, `0 < |xi| <= radius_cap`, where
/// `xi~ = (xi_2, .., xi_d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeParams {
    /// `K` in `|xi|^4 <= K |xi~|^4`; the default `2` is the ratio `|xi| <= 2^{1/4} |xi~|`.
    pub ratio_pow4: f64,
    /// Fraction of the resolved band `xi_max` used as the radius cap.
    pub cap_fraction: f64,
    /// Optional absolute cap; the smaller of the two caps applies.
    pub cap: Option<f64>,
}

impl Default for ConeParams {
    fn default() -> Self {
        Self {
            ratio_pow4: 2.0,
            cap_fraction: 1.0 / 16.0,
            cap: None,
        }
    }
}

/// Power-law fit of `|d^3_{xi_1} u^(t, xi)|` against `|xi|` inside the cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeProbeReport {
    pub t: f64,
    pub fitted_exponent: f64,
    pub intercept: f64,
    /// RMS residual of the log-log fit.
    pub fit_residual: f64,
    pub sample_count: usize,
    pub ratio_pow4: f64,
    pub radius_cap: f64,
    /// `(log |xi|, log |d^3 u^|)` sorted by `|xi|`.
    pub samples: Vec<(f64, f64)>,
}

/// Fits the growth of `d^3_{xi_1} u^(t)` near the origin.
///
/// `u_t` is pulled back to `v = e^{-t R_1 Delta} u_t`, whose transform is smooth,
/// and `d^3_{xi_1} u^(t) = F_3^1(t, xi, v^)` is assembled from the frequency
/// derivatives of `v^`. Differentiating the transform of `u_t` directly would need
/// `x_1^3 u_t`, which the box cannot represent once the dispersive tail reaches
/// the boundary.
pub fn cone_probe(u_t: &RealField, t: f64, params: &ConeParams) -> Result<ConeProbeReport> {
    let grid = *u_t.grid();
    if grid.dim() < 2 {
        return Err(HboError::InvalidParameter("the cone needs d >= 2".into()));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(HboError::InvalidParameter(format!(
            "probe time {t} must be non-negative"
        )));
    }
    let v = semigroup(u_t, -t)?;
    let derivatives = (0..=3)
        .map(|m| freq_derivative(&v, &MultiIndex::pure(0, m)))
        .collect::<Result<Vec<_>>>()?;
    let third = f_operator(3, 0, t, &derivatives)?;
    let radius_cap = params.cap.map_or(params.cap_fraction * grid.xi_max(), |c| {
        c.min(params.cap_fraction * grid.xi_max())
    });
    let mut samples: Vec<(f64, f64)> = (0..grid.len())
        .filter_map(|i| {
            let xi = grid.xi(i);
            let r = norm3(&xi);
            let tilde2 = r * r - xi[0] * xi[0];
            let inside = r > 0.0 && r <= radius_cap && r.powi(4) <= params.ratio_pow4 * tilde2 * tilde2;
            let value = third.coeffs()[i].norm();
            (inside && value > 0.0).then(|| (r.ln(), value.ln()))
        })
        .collect();
    if samples.len() < MIN_CONE_SAMPLES {
        return Err(HboError::InsufficientSamples {
            found: samples.len(),
            needed: MIN_CONE_SAMPLES,
        });
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let (x, y): (Vec<f64>, Vec<f64>) = samples.iter().copied().unzip();
    let fit = fit_line(&x, &y)?;
    Ok(ConeProbeReport {
        t,
        fitted_exponent: fit.slope,
        intercept: fit.intercept,
        fit_residual: fit.rms_residual,
        sample_count: samples.len(),
        ratio_pow4: params.ratio_pow4,
        radius_cap,
        samples,
    })
}

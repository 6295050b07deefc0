use serde::{Deserialize, Serialize};

use super::weight::truncated_radial;
use crate::error::Result;
use crate::multi_index::MultiIndex;
use crate::spectral::ops::{derivative_multiplier, fractional_multiplier, riesz_multiplier, semigroup};
use crate::spectral::{norm3, RealField};

/// Sampled constants `C_N = max |d^alpha (w_N^theta) x^beta| / w_N^{theta + |beta| - |alpha|}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightBoundReport {
    pub theta: f64,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    /// `(N, C_N)` pairs.
    pub constants: Vec<(f64, f64)>,
}

impl WeightBoundReport {
    pub fn max_constant(&self) -> f64 {
        self.constants.iter().map(|c| c.1).fold(0.0, f64::max)
    }

    /// `max C_N / min C_N`; near one when the constant does not depend on `N`.
    pub fn spread(&self) -> f64 {
        let min = self.constants.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        self.max_constant() / min
    }
}

fn weight_power(scale: f64, theta: f64, x: &[f64; 3]) -> f64 {
    truncated_radial(scale, norm3(x)).powf(theta)
}

/// Nested central differences of `w_N^theta`, one level per axis in `axes`.
fn weight_derivative(scale: f64, theta: f64, x: [f64; 3], axes: &[usize], h: f64) -> f64 {
    match axes.split_first() {
        None => weight_power(scale, theta, &x),
        Some((&a, rest)) => {
            let mut p = x;
            let mut m = x;
            p[a] += h;
            m[a] -= h;
            (weight_derivative(scale, theta, p, rest, h) - weight_derivative(scale, theta, m, rest, h)) / (2.0 * h)
        }
    }
}

/// Samples the pointwise weight bound along rays in the `x_1 x_2` plane out to `4N`.
pub fn weight_bound_constants(
    scales: &[f64],
    theta: f64,
    alpha: &MultiIndex,
    beta: &MultiIndex,
    samples_per_ray: usize,
) -> Result<WeightBoundReport> {
    let axes = alpha.axes();
    let exponent = theta + beta.order() as f64 - alpha.order() as f64;
    let angles = [0.1, 0.5, 0.9, 1.3, 2.0, 2.7];
    let constants = scales
        .iter()
        .map(|&scale| {
            let h = 1e-3;
            let mut worst = 0.0f64;
            for &phi in &angles {
                for k in 1..=samples_per_ray {
                    let r = 4.0 * scale * k as f64 / samples_per_ray as f64;
                    let x = [r * f64::cos(phi), r * f64::sin(phi), 0.0];
                    let lhs = (weight_derivative(scale, theta, x, &axes, h) * beta.monomial(&x)).abs();
                    let rhs = truncated_radial(scale, r).powf(exponent);
                    worst = worst.max(lhs / rhs);
                }
            }
            (scale, worst)
        })
        .collect();
    Ok(WeightBoundReport {
        theta,
        alpha: *alpha,
        beta: *beta,
        constants,
    })
}

/// `||Gamma_l S(t) f - S(t) x_l f|| / ||S(t) x_l f||` with
/// `Gamma_l = x_l + t delta_{1l} (-Delta)^{1/2} + t d_l R_1`.
///
/// Exact on the whole space; on the box the multiplication by `x_l` is not
/// periodic, so the defect measures how well `f` and its evolution fit inside.
pub fn gamma_commutation_defect(f: &RealField, t: f64, axis: usize) -> Result<f64> {
    let grid = *f.grid();
    grid.check_axis(axis)?;
    let e = MultiIndex::unit(axis);
    let g = semigroup(f, t)?;
    let gh = g.forward();
    let mut gamma = g.times_monomial(&e);
    let dl_r1 = derivative_multiplier(grid, &e)?.compose(&riesz_multiplier(grid, 0)?)?;
    gamma = &gamma + &(&dl_r1.apply(&gh)?.inverse() * t);
    if axis == 0 {
        gamma = &gamma + &(&fractional_multiplier(grid, 1.0)?.apply(&gh)?.inverse() * t);
    }
    let target = semigroup(&f.times_monomial(&e), t)?;
    gamma.relative_error(&target)
}

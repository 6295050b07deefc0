use crate::error::{HboError, Result};
use crate::spectral::{norm3, Grid, RealField};

/// Smallest truncation scale for which the blend is monotone with slope at most one.
pub const MIN_TRUNCATION: f64 = 2.0;

/// `<r> = (1 + r^2)^{1/2}`.
pub fn japanese_bracket(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

/// `<x>` sampled on the grid.
pub fn bracket_weight(grid: Grid) -> RealField {
    RealField::from_fn(grid, |x| japanese_bracket(norm3(x)))
}

/// Radial weight equal to `<r>` on `[0, N]` and `2N` on `[3N, inf)`.
///
/// On `[N, 3N]` it is the quintic Hermite interpolant matching value, slope and
/// curvature at both ends, so the weight is `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedWeight {
    scale: f64,
    values: RealField,
}

impl TruncatedWeight {
    pub fn new(grid: Grid, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= MIN_TRUNCATION) {
            return Err(HboError::InvalidParameter(format!(
                "truncation scale N = {scale} must be at least {MIN_TRUNCATION}"
            )));
        }
        let values = RealField::from_fn(grid, |x| truncated_radial(scale, norm3(x)));
        Ok(Self { scale, values })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn values(&self) -> &RealField {
        &self.values
    }

    pub fn grid(&self) -> &Grid {
        self.values.grid()
    }

    /// Whether the plateau `|x| >= 3N` fits inside the box.
    pub fn fits_box(&self) -> bool {
        3.0 * self.scale < self.grid().half_length()
    }

    pub fn radial(&self, r: f64) -> f64 {
        truncated_radial(self.scale, r)
    }
}

/// `w~_N(r)` for `r >= 0`.
pub fn truncated_radial(scale: f64, r: f64) -> f64 {
    let r = r.abs();
    if r <= scale {
        return japanese_bracket(r);
    }
    if r >= 3.0 * scale {
        return 2.0 * scale;
    }
    let h = 2.0 * scale;
    let s = (r - scale) / h;
    let b = japanese_bracket(scale);
    let value = b;
    let slope = scale / b * h;
    let curvature = h * h / b.powi(3);
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    value * h0 + slope * h1 + curvature * h2 + 2.0 * scale * (1.0 - h0)
}

/// `(sum weight^{2r} u^2 dx^d)^{1/2}`.
pub fn weighted_l2(u: &RealField, weight: &RealField, power: f64) -> Result<f64> {
    u.check_grid(weight)?;
    if weight.values().iter().any(|&w| w <= 0.0) {
        return Err(HboError::InvalidParameter("weight must be positive".into()));
    }
    let sum: f64 = u
        .values()
        .iter()
        .zip(weight.values())
        .map(|(v, w)| w.powf(2.0 * power) * v * v)
        .sum();
    Ok((sum * u.grid().cell_volume()).sqrt())
}

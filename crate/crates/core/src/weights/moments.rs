use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::solver::Trajectory;
use crate::spectral::ops::semigroup;
use crate::spectral::RealField;

/// Rectangle-rule `int x^beta u dx` over the box.
pub fn moment(u: &RealField, beta: &MultiIndex) -> Result<f64> {
    beta.check_dim(u.grid().dim())?;
    let grid = u.grid();
    let sum: f64 = u
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| v * beta.monomial(&grid.point(i)))
        .sum();
    Ok(sum * grid.cell_volume())
}

/// `int x_l v dx` for the pulled-back profile `v = e^{-t R_1 Delta} u(t)`.
///
/// On the whole space this equals `int x_l u(t) dx`, because the phase
/// `t xi_1 |xi|` has vanishing gradient at the origin. On the box it avoids the
/// slowly decaying dispersive tail of `u(t)`, which the plain moment picks up
/// with an error of order `t / L`.
pub fn profile_moment(u: &RealField, t: f64, axis: usize) -> Result<f64> {
    u.grid().check_axis(axis)?;
    moment(&semigroup(u, -t)?, &MultiIndex::unit(axis))
}

/// Least-squares line through `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation from the line.
    pub rms_residual: f64,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(HboError::SizeMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(HboError::InsufficientSamples {
            found: x.len(),
            needed: 2,
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(HboError::InvalidParameter("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms_residual = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(LineFit {
        slope,
        intercept,
        rms_residual,
    })
}

/// Cumulative trapezoid rule, starting from zero.
pub fn cumulative_trapezoid(t: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(t.len());
    let mut acc = 0.0;
    for i in 0..t.len() {
        if i > 0 {
            acc += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
        }
        out.push(acc);
    }
    out
}

fn require_snapshots(traj: &Trajectory, needed: usize) -> Result<()> {
    if traj.len() < needed {
        Err(HboError::InsufficientSamples {
            found: traj.len(),
            needed,
        })
    } else {
        Ok(())
    }
}

fn profile_series(traj: &Trajectory, axis: usize) -> Result<Vec<f64>> {
    traj.records
        .iter()
        .map(|r| {
            r.profile_moments.get(axis).copied().ok_or(HboError::AxisOutOfRange {
                axis,
                dim: r.profile_moments.len(),
            })
        })
        .collect()
}

/// `max_t |p_l(t) - p_l(0) - delta_{1l} t M(u_0) / 2|` over the snapshots, with
/// `p_l` the first moments of the pulled-back profile.
pub fn moment_identity_residual(traj: &Trajectory, axis: usize) -> Result<f64> {
    require_snapshots(traj, 3)?;
    let p = profile_series(traj, axis)?;
    let m0 = traj.records[0].l2_squared;
    let rate = if axis == 0 { 0.5 * m0 } else { 0.0 };
    Ok(traj
        .times
        .iter()
        .zip(&p)
        .map(|(t, v)| (v - p[0] - rate * t).abs())
        .fold(0.0, f64::max))
}

/// Fitted time slope of the first moment along `axis` with its predicted value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentLaw {
    pub axis: usize,
    pub fit: LineFit,
    /// `delta_{1l} M(u_0) / 2`.
    pub expected_slope: f64,
    /// Largest deviation of the moment from its initial value.
    pub max_drift: f64,
}

impl MomentLaw {
    /// `|slope - expected| / |expected|`, or the absolute slope when none is expected.
    pub fn slope_error(&self) -> f64 {
        let diff = (self.fit.slope - self.expected_slope).abs();
        if self.expected_slope == 0.0 {
            diff
        } else {
            diff / self.expected_slope.abs()
        }
    }
}

pub fn moment_law(traj: &Trajectory, axis: usize) -> Result<MomentLaw> {
    require_snapshots(traj, 3)?;
    let p = profile_series(traj, axis)?;
    let fit = fit_line(&traj.times, &p)?;
    let m0 = traj.records[0].l2_squared;
    Ok(MomentLaw {
        axis,
        fit,
        expected_slope: if axis == 0 { 0.5 * m0 } else { 0.0 },
        max_drift: p.iter().map(|v| (v - p[0]).abs()).fold(0.0, f64::max),
    })
}

/// `X(t) = i C_1(t) = int_0^t int x_1 u dx dtau` by two routes plus the closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CFunctional {
    pub times: Vec<f64>,
    /// `t m_0 + 1/2 int_0^t (t - tau) M(tau) dtau`, from the initial moment and the `L2` series.
    pub duhamel: Vec<f64>,
    /// `int_0^t p_1(tau) dtau`, from the measured first-moment series.
    pub by_parts: Vec<f64>,
    /// `t m_0 + t^2 M(u_0) / 4`.
    pub closed_form: Vec<f64>,
}

impl CFunctional {
    fn scale(&self) -> f64 {
        self.closed_form.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    fn max_gap(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    /// Largest gap between the two routes, relative to the largest closed-form value.
    pub fn route_discrepancy(&self) -> f64 {
        let scale = self.scale();
        let gap = Self::max_gap(&self.duhamel, &self.by_parts);
        if scale == 0.0 {
            gap
        } else {
            gap / scale
        }
    }

    /// Largest gap between the measured route and the closed form, relative.
    pub fn closed_form_error(&self) -> f64 {
        let scale = self.scale();
        let gap = Self::max_gap(&self.by_parts, &self.closed_form);
        if scale == 0.0 {
            gap
        } else {
            gap / scale
        }
    }

    /// First sign change of the measured integral after `t = 0`, linearly interpolated.
    pub fn zero_crossing(&self) -> Option<f64> {
        zero_crossing(&self.times, &self.by_parts)
    }
}

pub fn c_functional(traj: &Trajectory) -> Result<CFunctional> {
    require_snapshots(traj, 3)?;
    let t = &traj.times;
    let m0 = moment(traj.initial(), &MultiIndex::unit(0))?;
    let l2: Vec<f64> = traj.records.iter().map(|r| r.l2_squared).collect();
    let tl2: Vec<f64> = t.iter().zip(&l2).map(|(a, b)| a * b).collect();
    let a = cumulative_trapezoid(t, &l2);
    let b = cumulative_trapezoid(t, &tl2);
    let duhamel = (0..t.len()).map(|i| t[i] * m0 + 0.5 * (t[i] * a[i] - b[i])).collect();
    let by_parts = cumulative_trapezoid(t, &profile_series(traj, 0)?);
    let closed_form = t.iter().map(|s| s * m0 + 0.25 * s * s * l2[0]).collect();
    Ok(CFunctional {
        times: t.clone(),
        duhamel,
        by_parts,
        closed_form,
    })
}

/// `t* = -4 int x_1 u_0 / ||u_0||^2`.
pub fn t_star(u0: &RealField) -> Result<f64> {
    let m = u0.values().iter().map(|v| v * v).sum::<f64>() * u0.grid().cell_volume();
    if m == 0.0 {
        return Err(HboError::ZeroDatum);
    }
    Ok(-4.0 * moment(u0, &MultiIndex::unit(0))? / m)
}

/// First strict sign change of `y` after the first sample.
pub fn zero_crossing(t: &[f64], y: &[f64]) -> Option<f64> {
    (1..t.len().saturating_sub(1)).find_map(|i| {
        let (a, b) = (y[i], y[i + 1]);
        if a == 0.0 {
            Some(t[i])
        } else if a * b < 0.0 {
            Some(t[i] - a * (t[i + 1] - t[i]) / (b - a))
        } else {
            None
        }
    })
}

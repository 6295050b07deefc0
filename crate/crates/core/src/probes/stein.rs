use std::f64::consts::PI;

use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::spectral::ops::derivative_multiplier;
use crate::spectral::RealField;

/// Largest `n^d` accepted by the `O(n^{2d})` quadrature.
pub const STEIN_MAX_POINTS: usize = 4096;

/// `D^b f(x) = (int |f(x) - f(y)|^2 / |x - y|^{d + 2b} dy)^{1/2}` by direct quadrature.
///
/// Off-diagonal cells use the midpoint rule. The self cell is replaced by the
/// first-order Taylor value `|grad f(x)|^2 int_cell |h|^{2 - d - 2b} (h.e)^2/|h|^2 dh`,
/// and the region outside the box, where `f` is taken to vanish, contributes
/// `f(x)^2 int_{outside} |x - y|^{-d - 2b} dy`. In one dimension both corrections
/// are exact integrals; in two dimensions the self cell is replaced by a disc of
/// equal area and the exterior by ghost cells out to three box half-lengths plus
/// the analytic far field.
pub fn stein_derivative(f: &RealField, b: f64) -> Result<RealField> {
    let grid = *f.grid();
    if !(b > 0.0 && b < 1.0) {
        return Err(HboError::InvalidParameter(format!("order b = {b} not in (0, 1)")));
    }
    if grid.dim() > 2 || grid.len() > STEIN_MAX_POINTS {
        return Err(HboError::GridTooLarge {
            points: grid.len(),
            limit: STEIN_MAX_POINTS,
        });
    }
    let d = grid.dim();
    let dx = grid.dx();
    let vol = grid.cell_volume();
    let power = d as f64 + 2.0 * b;
    let fh = f.forward();
    let grads: Vec<RealField> = (0..d)
        .map(|a| Ok(derivative_multiplier(grid, &MultiIndex::unit(a))?.apply(&fh)?.inverse()))
        .collect::<Result<_>>()?;
    let values = f.values();
    let points: Vec<[f64; 3]> = (0..grid.len()).map(|i| grid.point(i)).collect();

    let exterior = exterior_weights(f, b);
    let out = (0..grid.len())
        .map(|i| {
            let x = points[i];
            let fx = values[i];
            let mut acc = 0.0;
            for (j, y) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                let r2: f64 = (0..d).map(|a| (x[a] - y[a]).powi(2)).sum();
                acc += (fx - values[j]).powi(2) / r2.powf(power / 2.0) * vol;
            }
            let grad2: f64 = grads.iter().map(|g| g.values()[i].powi(2)).sum();
            let self_cell = if d == 1 {
                grad2 * 2.0 * (dx / 2.0).powf(2.0 - 2.0 * b) / (2.0 - 2.0 * b)
            } else {
                let rho = dx / PI.sqrt();
                grad2 * 0.5 * 2.0 * PI * rho.powf(2.0 - 2.0 * b) / (2.0 - 2.0 * b)
            };
            (acc + self_cell + fx * fx * exterior[i]).sqrt()
        })
        .collect();
    RealField::new(grid, out)
}

/// `int_{y outside the box} |x - y|^{-d - 2b} dy` at every grid point.
fn exterior_weights(f: &RealField, b: f64) -> Vec<f64> {
    let grid = f.grid();
    let (l, dx) = (grid.half_length(), grid.dx());
    (0..grid.len())
        .map(|i| {
            let x = grid.point(i);
            if grid.dim() == 1 {
                // cells tile [-L - dx/2, L - dx/2)
                ((l - dx / 2.0 - x[0]).powf(-2.0 * b) + (l + dx / 2.0 + x[0]).powf(-2.0 * b)) / (2.0 * b)
            } else {
                exterior_2d(&x, l, dx, b)
            }
        })
        .collect()
}

fn exterior_2d(x: &[f64; 3], l: f64, dx: f64, b: f64) -> f64 {
    let n = (2.0 * l / dx).round() as i64;
    let mut acc = 0.0;
    // ghost cells of the eight neighbouring boxes
    for i in -n..2 * n {
        for j in -n..2 * n {
            if (0..n).contains(&i) && (0..n).contains(&j) {
                continue;
            }
            let y0 = -l + i as f64 * dx;
            let y1 = -l + j as f64 * dx;
            let r2 = (x[0] - y0).powi(2) + (x[1] - y1).powi(2);
            acc += r2.powf(-1.0 - b) * dx * dx;
        }
    }
    // beyond the 3x3 block, the disc of equal area stands in for the square
    let r_out = 6.0 * l / PI.sqrt();
    acc + 2.0 * PI * r_out.powf(-2.0 * b) / (2.0 * b)
}

/// `||D^b f||_2` over the whole space.
///
/// Outside the box `f` vanishes and `D^b f(x)^2 = int f(y)^2 |x - y|^{-d - 2b} dy`,
/// which integrates to `sum_y f(y)^2` times the exterior weight used above.
pub fn stein_norm(f: &RealField, b: f64) -> Result<f64> {
    let inside = stein_derivative(f, b)?.l2_norm().powi(2);
    let outside: f64 = exterior_weights(f, b)
        .iter()
        .zip(f.values())
        .map(|(w, v)| w * v * v)
        .sum::<f64>()
        * f.grid().cell_volume();
    Ok((inside + outside).sqrt())
}

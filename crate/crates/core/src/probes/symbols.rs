use num_complex::Complex64;

use crate::error::{HboError, Result};
use crate::spectral::{norm3, SpectralField};

/// `d^j / d xi_k^j (xi_1 |xi|)` for `j = 1..=4` (0-based axis `k`).
pub fn symbol_derivative(j: u32, k: usize, xi: &[f64; 3]) -> Result<f64> {
    let r = norm3(xi);
    if r == 0.0 {
        return Err(HboError::ZeroFrequency);
    }
    let d = if k == 0 { 1.0 } else { 0.0 };
    let x1 = xi[0];
    let xk = xi[k];
    let value = match j {
        1 => d * r + x1 * xk / r,
        2 => 2.0 * d * xk / r + x1 / r - x1 * xk * xk / r.powi(3),
        3 => {
            3.0 * d / r - 3.0 * d * xk * xk / r.powi(3) - 3.0 * x1 * xk / r.powi(3) + 3.0 * x1 * xk.powi(3) / r.powi(5)
        }
        4 => {
            -12.0 * d * xk / r.powi(3) + 12.0 * d * xk.powi(3) / r.powi(5) - 3.0 * x1 / r.powi(3)
                + 18.0 * x1 * xk * xk / r.powi(5)
                - 15.0 * x1 * xk.powi(4) / r.powi(7)
        }
        _ => {
            return Err(HboError::InvalidParameter(format!(
                "symbol derivative order {j} not in 1..=4"
            )))
        }
    };
    Ok(value)
}

/// `F_j^k(t, xi, f)` at one frequency from `f_m = d^m f / d xi_k^m`, `m = 0..=j`.
///
/// Built by the recursion in which each `F_j` is assembled from `F_{j-1}` applied
/// to `f` and to `d_{xi_k} f`. At the origin the phase derivatives are taken as zero.
pub fn f_operator_at(j: u32, k: usize, t: f64, xi: &[f64; 3], f: &[Complex64]) -> Result<Complex64> {
    if j > 4 {
        return Err(HboError::InvalidParameter(format!("F operator order {j} not in 0..=4")));
    }
    if f.len() < j as usize + 1 {
        return Err(HboError::MissingDerivativeData {
            needed: j as usize + 1,
            got: f.len(),
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let at_origin = norm3(xi) == 0.0;
    let mut p = [Complex64::default(); 5];
    if !at_origin {
        for (order, slot) in p.iter_mut().enumerate().skip(1).take(j as usize) {
            *slot = i * t * symbol_derivative(order as u32, k, xi)?;
        }
    }
    let e = Complex64::from_polar(1.0, t * xi[0] * norm3(xi));
    Ok(recurse(j, 0, &p, e, f))
}

/// `F_j` applied to the data shifted by `m` derivatives.
fn recurse(j: u32, m: usize, p: &[Complex64; 5], e: Complex64, f: &[Complex64]) -> Complex64 {
    let base = e * f[m];
    let lower = |order: u32| recurse(order, m, p, e, f);
    match j {
        0 => base,
        1 => p[1] * base + e * f[m + 1],
        2 => p[2] * base + p[1] * lower(1) + recurse(1, m + 1, p, e, f),
        3 => p[3] * base + 2.0 * p[2] * lower(1) + p[1] * lower(2) + recurse(2, m + 1, p, e, f),
        _ => p[4] * base + 3.0 * p[3] * lower(1) + 3.0 * p[2] * lower(2) + p[1] * lower(3) + recurse(3, m + 1, p, e, f),
    }
}

/// `F_j^k(t, ., f^)` on the whole lattice; `derivatives[m]` holds `d^m f^ / d xi_k^m`.
pub fn f_operator(j: u32, k: usize, t: f64, derivatives: &[SpectralField]) -> Result<SpectralField> {
    if derivatives.len() < j as usize + 1 {
        return Err(HboError::MissingDerivativeData {
            needed: j as usize + 1,
            got: derivatives.len(),
        });
    }
    let grid = *derivatives[0].grid();
    grid.check_axis(k)?;
    if derivatives.iter().any(|d| *d.grid() != grid) {
        return Err(HboError::GridMismatch);
    }
    let coeffs = (0..grid.len())
        .map(|idx| {
            let local: Vec<Complex64> = derivatives[..=j as usize].iter().map(|d| d.coeffs()[idx]).collect();
            f_operator_at(j, k, t, &grid.xi(idx), &local)
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralField::new(grid, coeffs)
}

//! Deterministic test and initial data.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectral::{Grid, RealField, SpectralField};

/// `A exp(-|x - c|^2 / w^2)`.
pub fn gaussian(grid: Grid, center: [f64; 3], width: f64, amplitude: f64) -> RealField {
    RealField::from_fn(grid, |x| {
        let r2: f64 = (0..grid.dim()).map(|a| (x[a] - center[a]).powi(2)).sum();
        amplitude * (-r2 / (width * width)).exp()
    })
}

/// `d/dx_1` of [`gaussian`]; a zero-mean datum.
pub fn dx1_gaussian(grid: Grid, center: [f64; 3], width: f64, amplitude: f64) -> RealField {
    RealField::from_fn(grid, |x| {
        let r2: f64 = (0..grid.dim()).map(|a| (x[a] - center[a]).powi(2)).sum();
        -2.0 * (x[0] - center[0]) / (width * width) * amplitude * (-r2 / (width * width)).exp()
    })
}

/// Independent uniform samples in `[-1, 1]`.
pub fn white_noise(grid: Grid, seed: u64) -> RealField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len()).map(|_| rng.random_range(-1.0..=1.0)).collect();
    RealField::new(grid, values).expect("finite samples")
}

/// Real trigonometric polynomial with random coefficients on `|k_j| <= k_max`
/// (no Nyquist content), scaled to unit `L2` norm. `zero_mean` drops the constant
/// mode.
///
/// Coefficients are drawn in a fixed lattice order, so the same seed, `k_max` and
/// half-length give the same function on every grid that resolves it.
pub fn band_limited(grid: Grid, seed: u64, k_max: i64, zero_mean: bool) -> RealField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_max = k_max.min(grid.n() as i64 / 2 - 1);
    let span = 2 * k_max + 1;
    let mut coeffs = vec![Complex64::default(); grid.len()];
    for flat in 0..span.pow(grid.dim() as u32) {
        let mut rest = flat;
        let k: Vec<i64> = (0..grid.dim())
            .map(|_| {
                let kj = rest % span - k_max;
                rest /= span;
                kj
            })
            .collect();
        let c = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let i = grid.lattice_index(&k).expect("inside the resolved band");
        coeffs[i] = c;
    }
    if zero_mean {
        coeffs[0] = Complex64::default();
    }
    // the real part of the inverse keeps the Hermitian part of the coefficients
    let f = SpectralField::new(grid, coeffs).expect("sized to grid").inverse();
    let norm = f.l2_norm();
    if norm == 0.0 {
        f
    } else {
        &f * norm.recip()
    }
}

/// Field whose transform is a Gaussian ring `exp(-(|xi| - rho)^2 / (2 sigma^2))`,
/// made anisotropic by `1 + 0.3 xi_1 xi_2 / |xi|^2` when `d >= 2` and shifted to
/// `center`. With `rho` many `sigma` away from the origin the transform and all of
/// its low-order derivatives vanish at `xi = 0` to rounding, so every low moment of
/// the field is zero.
pub fn ring_spectrum(grid: Grid, sigma: f64, rho: f64, center: [f64; 3]) -> RealField {
    let coeffs = (0..grid.len())
        .map(|i| {
            if grid.is_nyquist(i) {
                return Complex64::default();
            }
            let xi = grid.xi(i);
            let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
            let radial = (-(r - rho).powi(2) / (2.0 * sigma * sigma)).exp();
            let shape = if grid.dim() >= 2 && r > 0.0 {
                1.0 + 0.3 * xi[0] * xi[1] / (r * r)
            } else {
                1.0
            };
            let phase: f64 = (0..3).map(|a| xi[a] * center[a]).sum();
            Complex64::from_polar(radial * shape, -phase)
        })
        .collect();
    SpectralField::new(grid, coeffs).expect("sized to grid").inverse()
}

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fft;
use super::grid::Grid;
use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;

/// Real samples of a function on the grid, row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

/// Fourier coefficients approximating `int e^{-i x.xi} f(x) dx`, stored in FFT order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(HboError::SizeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(HboError::NonFiniteField);
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Samples `f` at every grid point; unused trailing coordinates are zero.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64; 3]) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.point(i))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Rectangle-rule integral over the box.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    /// Sample average.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Root-mean-square of the samples.
    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    pub fn inner(&self, other: &RealField) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum::<f64>() * self.grid.cell_volume())
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|u|` on the outermost layer of samples.
    pub fn boundary_max(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| self.grid.is_boundary(*i))
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    /// `boundary_max / max_abs`, zero for the zero field.
    pub fn boundary_ratio(&self) -> f64 {
        let max = self.max_abs();
        if max == 0.0 {
            0.0
        } else {
            self.boundary_max() / max
        }
    }

    /// Errors with `NonZeroMean` unless `|mean| <= 1e-10 * rms`.
    pub fn require_zero_mean(&self) -> Result<()> {
        let mean = self.mean();
        let norm = self.rms();
        if mean.abs() > 1e-10 * norm {
            Err(HboError::NonZeroMean { mean, norm })
        } else {
            Ok(())
        }
    }

    pub fn check_grid(&self, other: &RealField) -> Result<()> {
        if self.grid != other.grid {
            Err(HboError::GridMismatch)
        } else {
            Ok(())
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealField {
        RealField {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_map(&self, other: &RealField, f: impl Fn(f64, f64) -> f64) -> Result<RealField> {
        self.check_grid(other)?;
        Ok(RealField {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// Pointwise product.
    pub fn pointwise(&self, other: &RealField) -> Result<RealField> {
        self.zip_map(other, |a, b| a * b)
    }

    /// Multiplies by the monomial `x^beta`.
    pub fn times_monomial(&self, beta: &MultiIndex) -> RealField {
        let grid = self.grid;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| v * beta.monomial(&grid.point(i)))
            .collect();
        RealField { grid, values }
    }

    /// `x_1 -> -x_1` about the box center (sample `j` maps to `n - j`).
    pub fn reflect_x1(&self) -> RealField {
        let grid = self.grid;
        let n = grid.n();
        let values = (0..grid.len())
            .map(|i| {
                let mut idx = grid.unflatten(i);
                idx[0] = (n - idx[0]) % n;
                self.values[grid.flatten(idx)]
            })
            .collect();
        RealField { grid, values }
    }

    /// `||self - reference|| / ||reference||` (absolute if the reference vanishes).
    pub fn relative_error(&self, reference: &RealField) -> Result<f64> {
        let diff = self.zip_map(reference, |a, b| a - b)?.l2_norm();
        let scale = reference.l2_norm();
        Ok(if scale == 0.0 { diff } else { diff / scale })
    }

    pub fn forward(&self) -> SpectralField {
        SpectralField {
            grid: self.grid,
            coeffs: fft::forward(&self.grid, &self.values),
        }
    }
}

impl SpectralField {
    pub fn new(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(HboError::SizeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    /// Evaluates `f` at every lattice frequency.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64; 3]) -> Complex64) -> Self {
        let coeffs = (0..grid.len()).map(|i| f(&grid.xi(i))).collect();
        Self { grid, coeffs }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at the integer lattice point `k`.
    pub fn coeff(&self, k: &[i64]) -> Option<Complex64> {
        self.grid.lattice_index(k).map(|i| self.coeffs[i])
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `max |c(-k) - conj c(k)| / max |c|`, zero for the zero field.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let worst = (0..self.coeffs.len()).fold(0.0f64, |m, i| {
            let j = self.grid.conjugate_index(i);
            m.max((self.coeffs[j] - self.coeffs[i].conj()).norm())
        });
        worst / scale
    }

    /// L2 norm of the underlying function via Parseval.
    pub fn l2_norm(&self) -> f64 {
        let scale = (2.0 * self.grid.half_length()).powi(self.grid.dim() as i32);
        (self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() / scale).sqrt()
    }

    pub fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> SpectralField {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().enumerate().map(|(i, &c)| f(i, c)).collect(),
        }
    }

    pub fn zip_map(
        &self,
        other: &SpectralField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SpectralField> {
        if self.grid != other.grid {
            return Err(HboError::GridMismatch);
        }
        Ok(SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// Zeroes every coefficient on a Nyquist plane.
    pub fn without_nyquist(&self) -> SpectralField {
        self.map_indexed(|i, c| {
            if self.grid.is_nyquist(i) {
                Complex64::default()
            } else {
                c
            }
        })
    }

    /// Full complex inverse transform.
    pub fn inverse_complex(&self) -> Vec<Complex64> {
        fft::inverse_complex(&self.grid, &self.coeffs)
    }

    /// Inverse transform, keeping the real part.
    pub fn inverse(&self) -> RealField {
        RealField {
            grid: self.grid,
            values: self.inverse_complex().into_iter().map(|c| c.re).collect(),
        }
    }

    /// `max |Im| / max |Re|` of the inverse transform.
    pub fn imaginary_ratio(&self) -> f64 {
        let z = self.inverse_complex();
        let re = z.iter().fold(0.0f64, |m, c| m.max(c.re.abs()));
        let im = z.iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
        if re == 0.0 {
            im
        } else {
            im / re
        }
    }
}

impl Add for &RealField {
    type Output = RealField;

    /// Panics if the grids differ.
    fn add(self, rhs: &RealField) -> RealField {
        self.zip_map(rhs, |a, b| a + b).expect("grid mismatch")
    }
}

impl Sub for &RealField {
    type Output = RealField;

    /// Panics if the grids differ.
    fn sub(self, rhs: &RealField) -> RealField {
        self.zip_map(rhs, |a, b| a - b).expect("grid mismatch")
    }
}

impl Mul<f64> for &RealField {
    type Output = RealField;

    fn mul(self, rhs: f64) -> RealField {
        self.map(|v| v * rhs)
    }
}

impl Neg for &RealField {
    type Output = RealField;

    fn neg(self) -> RealField {
        self.map(|v| -v)
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;

    /// Panics if the grids differ.
    fn add(self, rhs: &SpectralField) -> SpectralField {
        self.zip_map(rhs, |a, b| a + b).expect("grid mismatch")
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    /// Panics if the grids differ.
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        self.zip_map(rhs, |a, b| a - b).expect("grid mismatch")
    }
}

impl Mul<Complex64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: Complex64) -> SpectralField {
        self.map_indexed(|_, c| c * rhs)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        self.map_indexed(|_, c| c * rhs)
    }
}

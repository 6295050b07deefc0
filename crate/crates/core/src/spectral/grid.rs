use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};

/// Periodic box `[-L, L)^d` sampled with `n` points per axis.
///
/// Sample points are `x_j = -L + j dx` with `dx = 2L / n`; the frequency
/// lattice is `xi_k = (pi / L) k` with `k` in `[-n/2, n/2)` on every axis,
/// stored in FFT order (non-negative wavenumbers first). Axis 0 is the
/// propagation direction `x_1`. Flat indices are row-major, the last axis
/// varying fastest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    n: usize,
    half_length: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, half_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(HboError::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(HboError::InvalidGrid(format!(
                "points per axis {n} must be a power of two >= 8"
            )));
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(HboError::InvalidGrid(format!(
                "half-length {half_length} must be positive"
            )));
        }
        Ok(Self { dim, n, half_length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_length / self.n as f64
    }

    /// Volume element `dx^d` of the rectangle rule.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Lattice spacing `pi / L` in frequency.
    pub fn dxi(&self) -> f64 {
        PI / self.half_length
    }

    /// Largest resolved frequency magnitude per axis, `n pi / (2L)`.
    pub fn xi_max(&self) -> f64 {
        self.n as f64 * self.dxi() / 2.0
    }

    /// Total number of samples `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_length + i as f64 * self.dx()
    }

    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.wavenumber(i) as f64 * self.dxi()
    }

    /// Per-axis indices of a flat index (unused trailing axes are zero).
    pub fn unflatten(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for axis in (0..self.dim).rev() {
            idx[axis] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn flatten(&self, idx: [usize; 3]) -> usize {
        (0..self.dim).fold(0, |acc, axis| acc * self.n + idx[axis])
    }

    /// Physical position of a flat index.
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = self.coordinate(idx[axis]);
        }
        x
    }

    /// Lattice frequency of a flat index.
    pub fn xi(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut xi = [0.0; 3];
        for axis in 0..self.dim {
            xi[axis] = self.frequency(idx[axis]);
        }
        xi
    }

    /// Integer lattice point of a flat index.
    pub fn lattice(&self, flat: usize) -> Vec<i64> {
        let idx = self.unflatten(flat);
        (0..self.dim).map(|axis| self.wavenumber(idx[axis])).collect()
    }

    /// Flat index of a lattice point given by integer wavenumbers.
    pub fn lattice_index(&self, k: &[i64]) -> Option<usize> {
        if k.len() != self.dim {
            return None;
        }
        let half = (self.n / 2) as i64;
        let mut idx = [0usize; 3];
        for (axis, &kj) in k.iter().enumerate() {
            if kj < -half || kj >= half {
                return None;
            }
            idx[axis] = kj.rem_euclid(self.n as i64) as usize;
        }
        Some(self.flatten(idx))
    }

    /// Flat index of the lattice point `-k` wrapped into the lattice.
    pub fn conjugate_index(&self, flat: usize) -> usize {
        let idx = self.unflatten(flat);
        let mut out = [0usize; 3];
        for axis in 0..self.dim {
            out[axis] = (self.n - idx[axis]) % self.n;
        }
        self.flatten(out)
    }

    /// Whether any component of the lattice point sits on the Nyquist plane `k_j = -n/2`.
    pub fn is_nyquist(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        (0..self.dim).any(|axis| idx[axis] == self.n / 2)
    }

    /// Flat indices lying on the boundary layer of the box (first or last sample on some axis).
    pub fn is_boundary(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        (0..self.dim).any(|axis| idx[axis] == 0 || idx[axis] == self.n - 1)
    }

    pub fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim {
            Err(HboError::AxisOutOfRange { axis, dim: self.dim })
        } else {
            Ok(())
        }
    }
}

pub fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_grid_on_pi_box() {
        let g = Grid::new(1, 8, PI).unwrap();
        assert!((g.dx() - PI / 4.0).abs() < 1e-15);
        let ks: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
        let mut sorted = ks.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-4, -3, -2, -1, 0, 1, 2, 3]);
        assert!((g.coordinate(0) + PI).abs() < 1e-15);
    }

    #[test]
    fn two_dimensional_frequency_step() {
        let g = Grid::new(2, 256, 32.0 * PI).unwrap();
        assert_eq!(g.len(), 256 * 256);
        assert!((g.dxi() - 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn three_dimensional_spacing() {
        let g = Grid::new(3, 64, 16.0).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.len(), 64 * 64 * 64);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Grid::new(1, 12, 1.0).is_err());
        assert!(Grid::new(1, 4, 1.0).is_err());
        assert!(Grid::new(4, 8, 1.0).is_err());
        assert!(Grid::new(0, 8, 1.0).is_err());
        assert!(Grid::new(2, 8, 0.0).is_err());
        assert!(Grid::new(2, 8, -1.0).is_err());
    }

    #[test]
    fn flatten_roundtrip_and_conjugates() {
        let g = Grid::new(3, 8, 1.0).unwrap();
        for flat in 0..g.len() {
            assert_eq!(g.flatten(g.unflatten(flat)), flat);
            let c = g.conjugate_index(flat);
            assert_eq!(g.conjugate_index(c), flat);
            if !g.is_nyquist(flat) {
                let k: Vec<i64> = g.lattice(flat).iter().map(|v| -v).collect();
                assert_eq!(g.lattice_index(&k), Some(c));
            }
        }
    }
}

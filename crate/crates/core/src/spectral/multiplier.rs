use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::Grid;
use crate::error::{HboError, Result};

/// A Fourier symbol sampled on the frequency lattice.
///
/// The symbol is symmetrized as `(m(xi_k) + conj m(xi_{-k})) / 2`, where `-k`
/// wraps into the lattice. Away from the Nyquist planes this is `m(xi_k)` for
/// every symbol that maps real functions to real functions; on the Nyquist
/// planes it keeps the output real. The zero mode is set to `zero_mode`
/// without evaluating the symbol at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier {
    grid: Grid,
    values: Vec<Complex64>,
}

impl Multiplier {
    pub fn from_symbol(grid: Grid, symbol: impl Fn(&[f64; 3]) -> Complex64, zero_mode: Complex64) -> Result<Self> {
        let raw: Vec<Complex64> = (0..grid.len())
            .map(|i| if i == 0 { zero_mode } else { symbol(&grid.xi(i)) })
            .collect();
        if let Some(i) = raw.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(HboError::NonFiniteSymbol { k: grid.lattice(i) });
        }
        let values = (0..grid.len())
            .map(|i| {
                if i == 0 {
                    zero_mode
                } else {
                    0.5 * (raw[i] + raw[grid.conjugate_index(i)].conj())
                }
            })
            .collect();
        Ok(Self { grid, values })
    }

    /// Real-valued symbol.
    pub fn from_real_symbol(grid: Grid, symbol: impl Fn(&[f64; 3]) -> f64, zero_mode: f64) -> Result<Self> {
        Self::from_symbol(
            grid,
            |xi| Complex64::new(symbol(xi), 0.0),
            Complex64::new(zero_mode, 0.0),
        )
    }

    pub fn identity(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(1.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.values[0]
    }

    /// Pointwise map of the sampled symbol (e.g. `exp` for a generator).
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Multiplier {
        Multiplier {
            grid: self.grid,
            values: self.values.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Zeroes the symbol wherever `keep(flat_index)` is false.
    pub fn masked(&self, keep: impl Fn(usize) -> bool) -> Multiplier {
        Multiplier {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &c)| if keep(i) { c } else { Complex64::default() })
                .collect(),
        }
    }

    /// Symbol of the composition (product of symbols).
    pub fn compose(&self, other: &Multiplier) -> Result<Multiplier> {
        if self.grid != other.grid {
            return Err(HboError::GridMismatch);
        }
        Ok(Multiplier {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn apply(&self, field: &SpectralField) -> Result<SpectralField> {
        if self.grid != *field.grid() {
            return Err(HboError::GridMismatch);
        }
        Ok(field.map_indexed(|i, c| c * self.values[i]))
    }

    pub fn apply_in_place(&self, field: &mut SpectralField) -> Result<()> {
        if self.grid != *field.grid() {
            return Err(HboError::GridMismatch);
        }
        for (c, m) in field.coeffs_mut().iter_mut().zip(&self.values) {
            *c *= m;
        }
        Ok(())
    }
}

/// `coeff'(k) = m(xi_k) coeff(k)`.
pub fn apply_multiplier(field: &SpectralField, m: &Multiplier) -> Result<SpectralField> {
    m.apply(field)
}

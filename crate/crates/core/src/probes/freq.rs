use num_complex::Complex64;

use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::spectral::{RealField, SpectralField};

/// `d^beta_xi u^`, computed as the transform of `(-i x)^beta u`.
pub fn freq_derivative(u: &RealField, beta: &MultiIndex) -> Result<SpectralField> {
    beta.check_dim(u.grid().dim())?;
    if beta.order() > 4 {
        return Err(HboError::UnsupportedMultiIndex(beta.components().to_vec()));
    }
    let factor = Complex64::new(0.0, -1.0).powu(beta.order());
    Ok(&u.times_monomial(beta).forward() * factor)
}

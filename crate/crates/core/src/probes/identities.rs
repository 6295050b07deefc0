use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};
use crate::multi_index::MultiIndex;
use crate::sampling::{band_limited, ring_spectrum};
use crate::spectral::ops::{d_riesz_beta, fractional, partial, riesz};
use crate::spectral::{Grid, RealField};

/// Box half-length of the suite grid.
pub const SUITE_HALF_LENGTH: f64 = 16.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: usize,
    pub half_length: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn worst(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix))
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }
}

fn rel(a: &RealField, b: &RealField) -> f64 {
    let scale = a.l2_norm().max(b.l2_norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).l2_norm() / scale
    }
}

/// `[R_1, m] f = R_1(m f) - m R_1 f` for a monomial `m = x^gamma`.
fn commutator_x(f: &RealField, gamma: &MultiIndex) -> Result<RealField> {
    Ok(&riesz(&f.times_monomial(gamma), 0)? - &riesz(f, 0)?.times_monomial(gamma))
}

/// `D^{e_k} f` through Riesz transforms and `|grad|^{-1}`.
fn first_order_decomposition(f: &RealField, k: usize) -> Result<RealField> {
    let inv = fractional(f, -1.0)?;
    let rr = riesz(&riesz(&inv, k)?, 0)?;
    Ok(if k == 0 { &(-&inv) - &rr } else { -&rr })
}

/// Riesz-calculus identities on a planar `n x n` grid of half-length 16.
///
/// Pure multiplier identities use band-limited zero-mean data. Identities that
/// multiply by `x` use a field whose transform is a ring far from the origin, so
/// its low moments vanish and it is concentrated well inside the box.
pub fn identity_suite(n: usize) -> Result<IdentityReport> {
    let grid = Grid::new(2, n, SUITE_HALF_LENGTH)?;
    if n < 128 {
        return Err(HboError::InvalidParameter(format!(
            "identity suite needs n >= 128, got {n}"
        )));
    }
    let mut checks = Vec::new();
    let mut push = |name: String, residual: f64, threshold: f64| {
        checks.push(IdentityCheck {
            name,
            residual,
            threshold,
            passed: residual <= threshold,
        });
    };

    let g = band_limited(grid, 11, 12, true);
    for k in 0..2 {
        let ek = MultiIndex::unit(k);
        let lhs = d_riesz_beta(&g, 0, &ek)?;
        push(
            format!("d_riesz_e{}", k + 1),
            rel(&lhs, &first_order_decomposition(&g, k)?),
            1e-12,
        );
        for j in 0..2 {
            let dj = partial(&g, &MultiIndex::unit(j))?;
            let lhs = d_riesz_beta(&dj, 0, &ek)?;
            let rj = riesz(&g, j)?;
            let tail = riesz(&riesz(&rj, k)?, 0)?;
            let rhs = if k == 0 { &rj + &tail } else { tail };
            push(format!("d_riesz_e{}_dx{}", k + 1, j + 1), rel(&lhs, &rhs), 1e-12);
        }
    }
    for k in 0..2 {
        let ek = MultiIndex::unit(k);
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            let dij = partial(&g, &(MultiIndex::unit(i) + MultiIndex::unit(j)))?;
            let lhs = d_riesz_beta(&dij, 0, &ek)?;
            let base = fractional(&riesz(&riesz(&g, j)?, i)?, 1.0)?;
            let tail = riesz(&riesz(&base, k)?, 0)?;
            let rhs = if k == 0 { -&(&base + &tail) } else { -&tail };
            push(
                format!("d_riesz_e{}_dx{}dx{}", k + 1, i + 1, j + 1),
                rel(&lhs, &rhs),
                1e-12,
            );
        }
    }

    let sigma = 10.0 / SUITE_HALF_LENGTH;
    let f = ring_spectrum(grid, sigma, 9.0 * sigma, [0.7, -0.4, 0.0]);
    for k in 0..2 {
        let ek = MultiIndex::unit(k);
        for j in 0..2 {
            let dj = partial(&f, &MultiIndex::unit(j))?;
            let lhs = commutator_x(&dj, &ek)?;
            let rhs = d_riesz_beta(&dj, 0, &ek)?;
            push(format!("commutator_x{}_dx{}", k + 1, j + 1), rel(&lhs, &rhs), 1e-12);
        }
    }
    for k in 0..2 {
        let ek = MultiIndex::unit(k);
        push(
            format!("commutator_x{}", k + 1),
            rel(&commutator_x(&f, &ek)?, &d_riesz_beta(&f, 0, &ek)?),
            1e-6,
        );
        let two = MultiIndex::pure(k, 2);
        let rhs = &(&d_riesz_beta(&f.times_monomial(&ek), 0, &ek)? * 2.0) - &d_riesz_beta(&f, 0, &two)?;
        push(
            format!("commutator_x{}^2", k + 1),
            rel(&commutator_x(&f, &two)?, &rhs),
            1e-6,
        );
    }
    let (e1, e2) = (MultiIndex::unit(0), MultiIndex::unit(1));
    let mixed = e1 + e2;
    let rhs = &(&d_riesz_beta(&f.times_monomial(&e2), 0, &e1)? + &d_riesz_beta(&f.times_monomial(&e1), 0, &e2)?)
        - &d_riesz_beta(&f, 0, &mixed)?;
    push("commutator_x1x2".into(), rel(&commutator_x(&f, &mixed)?, &rhs), 1e-6);

    Ok(IdentityReport {
        n,
        half_length: SUITE_HALF_LENGTH,
        checks,
    })
}

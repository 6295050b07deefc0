use num_complex::Complex64;

use super::config::SolverConfig;
use crate::error::{HboError, Result};
use crate::spectral::ops::{dispersion_multiplier, semigroup_multiplier};
use crate::spectral::{fft, Grid, Multiplier, RealField, SpectralField};

/// `-1/2 i xi_1` restricted to modes with every `|k_j| <= fraction n / 2`.
fn nonlinear_multiplier(grid: Grid, dealias_fraction: f64) -> Result<Multiplier> {
    let cutoff = dealias_fraction * grid.n() as f64 / 2.0;
    let m = Multiplier::from_symbol(grid, |xi| Complex64::new(0.0, -0.5 * xi[0]), Complex64::default())?;
    Ok(m.masked(|i| grid.lattice(i).iter().all(|&kj| (kj.abs() as f64) <= cutoff)))
}

/// `N(u) = -1/2 d_{x_1}(u^2)` with the square dealiased.
pub fn nonlinearity(u: &RealField, dealias_fraction: f64) -> Result<RealField> {
    let m = nonlinear_multiplier(*u.grid(), dealias_fraction)?;
    let sq = u.map(|v| v * v).forward();
    Ok(m.apply(&sq)?.inverse())
}

/// Integrating-factor RK4 stepper for a fixed grid and step size.
///
/// The state is kept in spectral space. With `E = e^{dt g}`, `E2 = e^{dt g / 2}`
/// and `g = i xi_1 |xi|`, one step of RK4 on the interaction-picture variable
/// `v = e^{-t g} u^` reads
/// `u^ <- E u^ + dt/6 (E k1 + 2 E2 (k2 + k3) + k4)`.
#[derive(Debug, Clone)]
pub struct Stepper {
    grid: Grid,
    dt: f64,
    full: Multiplier,
    half: Multiplier,
    nonlinear: Option<Multiplier>,
    buffers: Buffers,
}

#[derive(Debug, Clone)]
struct Buffers {
    u: Vec<Complex64>,
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    stage: Vec<Complex64>,
    work: Vec<Complex64>,
}

impl Buffers {
    fn new(len: usize) -> Self {
        let z = vec![Complex64::default(); len];
        Self {
            u: z.clone(),
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            stage: z.clone(),
            work: z,
        }
    }
}

/// Spectral right-hand side `m * F[(F^-1 uh)^2]`.
fn rhs(grid: &Grid, m: Option<&Multiplier>, work: &mut [Complex64], uh: &[Complex64], out: &mut [Complex64]) {
    let Some(m) = m else {
        out.fill(Complex64::default());
        return;
    };
    work.copy_from_slice(uh);
    fft::inverse_complex_in_place(grid, work);
    for c in work.iter_mut() {
        *c = Complex64::new(c.re * c.re, 0.0);
    }
    fft::forward_complex_in_place(grid, work);
    for ((o, w), m) in out.iter_mut().zip(work.iter()).zip(m.values()) {
        *o = w * m;
    }
}

impl Stepper {
    pub fn new(grid: Grid, dt: f64, config: &SolverConfig) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(HboError::InvalidParameter(format!("dt = {dt} must be positive")));
        }
        Ok(Self {
            grid,
            dt,
            full: semigroup_multiplier(grid, dt)?,
            half: semigroup_multiplier(grid, dt / 2.0)?,
            nonlinear: if config.nonlinear {
                Some(nonlinear_multiplier(grid, config.dealias_fraction)?)
            } else {
                None
            },
            buffers: Buffers::new(grid.len()),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances `uh` by one step in place; `t` is the time reached, used for error reporting.
    pub fn step(&mut self, uh: &mut SpectralField, t: f64) -> Result<()> {
        if *uh.grid() != self.grid {
            return Err(HboError::GridMismatch);
        }
        let dt = self.dt;
        let grid = &self.grid;
        let m = self.nonlinear.as_ref();
        let e = self.full.values();
        let e2 = self.half.values();
        let Buffers {
            u,
            k1,
            k2,
            k3,
            k4,
            stage,
            work,
        } = &mut self.buffers;
        u.copy_from_slice(uh.coeffs());

        rhs(grid, m, work, u, k1);
        for i in 0..u.len() {
            stage[i] = e2[i] * (u[i] + 0.5 * dt * k1[i]);
        }
        rhs(grid, m, work, stage, k2);
        for i in 0..u.len() {
            stage[i] = e2[i] * u[i] + 0.5 * dt * k2[i];
        }
        rhs(grid, m, work, stage, k3);
        for i in 0..u.len() {
            stage[i] = e[i] * u[i] + dt * e2[i] * k3[i];
        }
        rhs(grid, m, work, stage, k4);
        for (i, out) in uh.coeffs_mut().iter_mut().enumerate() {
            *out = e[i] * u[i] + dt / 6.0 * (e[i] * k1[i] + 2.0 * e2[i] * (k2[i] + k3[i]) + k4[i]);
        }
        if uh.is_finite() {
            Ok(())
        } else {
            Err(HboError::BlowUp { time: t })
        }
    }
}

/// One integrating-factor RK4 step of size `dt` from `u`.
pub fn step_ifrk4(u: &RealField, dt: f64, config: &SolverConfig) -> Result<RealField> {
    let mut stepper = Stepper::new(*u.grid(), dt, config)?;
    let mut uh = u.forward();
    stepper.step(&mut uh, dt)?;
    Ok(uh.inverse())
}

/// Linear generator `i xi_1 |xi|` as used by the stepper.
pub fn linear_generator(grid: Grid) -> Result<Multiplier> {
    dispersion_multiplier(grid)
}

use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};

/// Default fraction of the resolved band kept by the dealiasing mask.
pub const DEFAULT_DEALIAS_FRACTION: f64 = 2.0 / 3.0;

/// Time-stepping parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub dt: f64,
    pub final_time: f64,
    pub dealias_fraction: f64,
    /// Steps between stored snapshots; the final time is always stored.
    pub snapshot_every: usize,
    /// Drops the quadratic term when false, leaving the linear flow.
    #[serde(default = "enabled")]
    pub nonlinear: bool,
}

fn enabled() -> bool {
    true
}

impl SolverConfig {
    /// Config with the default dealiasing and roughly 200 snapshots.
    pub fn new(dt: f64, final_time: f64) -> Result<Self> {
        let config = Self {
            dt,
            final_time,
            dealias_fraction: DEFAULT_DEALIAS_FRACTION,
            snapshot_every: default_snapshot_every(dt, final_time),
            nonlinear: true,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_snapshot_every(mut self, every: usize) -> Self {
        self.snapshot_every = every;
        self
    }

    pub fn linear(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(HboError::InvalidParameter(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.final_time.is_finite() && self.final_time >= self.dt) {
            return Err(HboError::InvalidParameter(format!(
                "final_time = {} must be at least dt = {}",
                self.final_time, self.dt
            )));
        }
        if !(self.dealias_fraction > 0.0 && self.dealias_fraction <= 1.0) {
            return Err(HboError::InvalidParameter(format!(
                "dealias_fraction = {} not in (0, 1]",
                self.dealias_fraction
            )));
        }
        if self.snapshot_every == 0 {
            return Err(HboError::InvalidParameter("snapshot_every must be positive".into()));
        }
        Ok(())
    }

    /// Number of steps; the step actually taken is `final_time / steps()`.
    pub fn steps(&self) -> usize {
        ((self.final_time / self.dt).round() as usize).max(1)
    }

    pub fn effective_dt(&self) -> f64 {
        self.final_time / self.steps() as f64
    }
}

/// `ceil(T / dt / 200)`, at least one.
pub fn default_snapshot_every(dt: f64, final_time: f64) -> usize {
    let every = (final_time / dt / 200.0).ceil();
    if every.is_finite() && every >= 1.0 {
        every as usize
    } else {
        1
    }
}

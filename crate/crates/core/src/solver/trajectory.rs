use serde::{Deserialize, Serialize};

use super::config::SolverConfig;
use super::stepper::Stepper;
use crate::error::{HboError, Result};
use crate::spectral::RealField;
use crate::weights::{DiagnosticsRecord, DiagnosticsSettings};

/// Snapshots of a run with one diagnostics record each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<RealField>,
    pub records: Vec<DiagnosticsRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial(&self) -> &RealField {
        &self.states[0]
    }

    pub fn last(&self) -> &RealField {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// Whether any snapshot tripped the boundary-decay guard.
    pub fn guard_warnings(&self) -> usize {
        self.records.iter().filter(|r| r.boundary_warning).count()
    }

    fn push(&mut self, t: f64, u: RealField, settings: &DiagnosticsSettings) {
        self.records.push(DiagnosticsRecord::compute(&u, t, settings));
        self.times.push(t);
        self.states.push(u);
    }
}

/// Result of a run that may stop early; the snapshots up to the failure are kept.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub failure: Option<HboError>,
}

/// Evolves `u0` with default diagnostics.
pub fn evolve(u0: &RealField, config: &SolverConfig) -> Result<Trajectory> {
    evolve_with(u0, config, &DiagnosticsSettings::default())
}

pub fn evolve_with(u0: &RealField, config: &SolverConfig, settings: &DiagnosticsSettings) -> Result<Trajectory> {
    let outcome = run(u0, config, settings)?;
    match outcome.failure {
        Some(err) => Err(err),
        None => Ok(outcome.trajectory),
    }
}

/// Like [`evolve_with`] but returns the partial trajectory on blow-up.
pub fn run(u0: &RealField, config: &SolverConfig, settings: &DiagnosticsSettings) -> Result<RunOutcome> {
    config.validate()?;
    if !u0.is_finite() {
        return Err(HboError::NonFiniteField);
    }
    let grid = *u0.grid();
    let steps = config.steps();
    let dt = config.effective_dt();
    let mut stepper = Stepper::new(grid, dt, config)?;
    let mut trajectory = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        records: Vec::new(),
    };
    trajectory.push(0.0, u0.clone(), settings);
    let mut uh = u0.forward();
    for step in 1..=steps {
        let t = step as f64 * dt;
        if let Err(err) = stepper.step(&mut uh, t) {
            return Ok(RunOutcome {
                trajectory,
                failure: Some(err),
            });
        }
        if step % config.snapshot_every == 0 || step == steps {
            trajectory.push(t, uh.inverse(), settings);
        }
    }
    Ok(RunOutcome {
        trajectory,
        failure: None,
    })
}

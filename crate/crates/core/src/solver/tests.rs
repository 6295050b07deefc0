use std::f64::consts::PI;

use super::*;
use crate::sampling::{band_limited, gaussian};
use crate::spectral::ops::semigroup;
use crate::spectral::{Grid, RealField};

#[test]
fn nonlinearity_vanishes_on_zero_and_constants() {
    let grid = Grid::new(2, 16, 3.0).unwrap();
    let zero = RealField::zeros(grid);
    assert_eq!(nonlinearity(&zero, 2.0 / 3.0).unwrap().max_abs(), 0.0);
    let c = RealField::from_fn(grid, |_| 1.7);
    assert!(nonlinearity(&c, 2.0 / 3.0).unwrap().max_abs() <= 1e-14);
}

#[test]
fn nonlinearity_of_sine_matches_trig_expansion() {
    // -1/2 d/dx sin^2(ax) = -(a/2) sin(2ax)
    for n in [8, 64] {
        let grid = Grid::new(1, n, 2.0).unwrap();
        let a = PI / grid.half_length();
        let u = RealField::from_fn(grid, |x| (a * x[0]).sin());
        let exact = RealField::from_fn(grid, |x| -0.5 * a * (2.0 * a * x[0]).sin());
        let got = nonlinearity(&u, 2.0 / 3.0).unwrap();
        assert!((&got - &exact).max_abs() <= 1e-12);
    }
}

#[test]
fn dealiasing_removes_modes_beyond_the_cutoff() {
    let grid = Grid::new(1, 16, PI).unwrap();
    // u^2 has modes 0 and +-6; 6 > (2/3) 8
    let u = RealField::from_fn(grid, |x| (3.0 * x[0]).cos());
    assert!(nonlinearity(&u, 2.0 / 3.0).unwrap().max_abs() <= 1e-14);
    assert!(nonlinearity(&u, 1.0).unwrap().max_abs() > 1.0);
}

#[test]
fn linear_step_is_the_exact_group() {
    let grid = Grid::new(2, 32, 4.0).unwrap();
    let u = RealField::from_fn(grid, |x| (x[0] * PI / 4.0 + x[1] * PI / 2.0).cos());
    let config = SolverConfig::new(0.1, 1.0).unwrap().linear();
    let stepped = step_ifrk4(&u, 0.1, &config).unwrap();
    let exact = semigroup(&u, 0.1).unwrap();
    assert!((&stepped - &exact).max_abs() <= 1e-14);
}

#[test]
fn single_step_preserves_the_mean() {
    let grid = Grid::new(2, 32, 4.0).unwrap();
    let u = &band_limited(grid, 3, 10, false) * 2.0;
    let config = SolverConfig::new(0.01, 1.0).unwrap();
    let next = step_ifrk4(&u, 0.01, &config).unwrap();
    assert!((next.mean() - u.mean()).abs() <= 1e-14 * u.max_abs());
    assert!(next.relative_error(&u).unwrap() > 1e-6);
}

#[test]
fn blow_up_is_reported_with_time() {
    let grid = Grid::new(1, 32, 1.0).unwrap();
    let u = RealField::from_fn(grid, |x| 1e150 * (PI * x[0]).sin());
    let config = SolverConfig::new(0.5, 10.0).unwrap().with_snapshot_every(1);
    let outcome = run(&u, &config, &Default::default()).unwrap();
    match outcome.failure {
        Some(crate::HboError::BlowUp { time }) => assert!(time > 0.0),
        other => panic!("expected blow-up, got {other:?}"),
    }
    assert!(!outcome.trajectory.is_empty());
    assert!(evolve(&u, &config).is_err());
}

#[test]
fn zero_datum_stays_zero_and_snapshots_cover_the_run() {
    let grid = Grid::new(2, 16, 4.0).unwrap();
    let config = SolverConfig::new(0.01, 0.25).unwrap().with_snapshot_every(7);
    let traj = evolve(&RealField::zeros(grid), &config).unwrap();
    assert_eq!(traj.times[0], 0.0);
    assert!((traj.times.last().unwrap() - 0.25).abs() < 1e-12);
    assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(traj.times.len(), traj.states.len());
    assert_eq!(traj.times.len(), traj.records.len());
    // steps 7, 14, 21 and the final step 25
    assert_eq!(traj.len(), 5);
    assert!(traj.states.iter().all(|s| s.max_abs() == 0.0));
}

#[test]
fn config_validation() {
    assert!(SolverConfig::new(-1e-3, 1.0).is_err());
    assert!(SolverConfig::new(1e-3, 0.0).is_err());
    let mut c = SolverConfig::new(1e-3, 5.0).unwrap();
    assert_eq!(c.snapshot_every, 25);
    assert_eq!(c.steps(), 5000);
    c.dealias_fraction = 1.5;
    assert!(c.validate().is_err());
    assert_eq!(default_snapshot_every(5e-4, 1.0), 10);
    assert_eq!(default_snapshot_every(1e-2, 0.5), 1);
}

fn final_state(u0: &RealField, dt: f64, t: f64) -> RealField {
    let config = SolverConfig::new(dt, t).unwrap().with_snapshot_every(usize::MAX);
    evolve(u0, &config).unwrap().last().clone()
}

#[test]
fn integrator_is_fourth_order() {
    let grid = Grid::new(1, 256, 8.0 * PI).unwrap();
    let u0 = gaussian(grid, [0.0; 3], 1.0, 2.0);
    let dts = [0.04, 0.02, 0.01, 0.005];
    let reference = final_state(&u0, dts[3] / 16.0, 1.0);
    let errors: Vec<f64> = dts
        .iter()
        .map(|&dt| (&final_state(&u0, dt, 1.0) - &reference).l2_norm())
        .collect();
    let logs: Vec<f64> = dts.iter().map(|v| v.ln()).collect();
    let log_err: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    let fit = crate::weights::fit_line(&logs, &log_err).unwrap();
    assert!((fit.slope - 4.0).abs() <= 0.2, "order {} from {errors:?}", fit.slope);
}

#[test]
fn reversed_reflected_run_returns_to_the_datum() {
    let grid = Grid::new(2, 64, 8.0).unwrap();
    let u0 = gaussian(grid, [0.5, -0.3, 0.0], 1.2, 1.0);
    for dt in [0.02, 0.01] {
        let forward = final_state(&u0, dt, 0.5);
        let back = final_state(&forward.reflect_x1(), dt, 0.5).reflect_x1();
        let err = back.relative_error(&u0).unwrap();
        // dt^4 scaled by the solution's time derivatives
        assert!(err <= 10.0 * dt.powi(4), "dt = {dt}: {err:e}");
    }
}

#[test]
fn soliton_profile_and_guard() {
    let grid = Grid::new(1, 2048, 64.0 * PI).unwrap();
    for c in [0.5, 1.0, 2.0] {
        let q = bo1d_soliton(c, 0.0, grid).unwrap();
        assert!((q.max_abs() - 4.0 * c).abs() <= 1e-12);
        // box mass plus the analytic mass outside [-L, L)
        let l = grid.half_length();
        let tail = 8.0 * (PI / 2.0 - (c * l).atan());
        assert!((q.integral() + tail - 4.0 * PI).abs() <= 1e-4 * 4.0 * PI);
    }
    let small = Grid::new(1, 64, 10.0).unwrap();
    assert!(matches!(
        bo1d_soliton(1.0, 0.0, small),
        Err(crate::HboError::BoundaryGuard { .. })
    ));
    assert!(bo1d_soliton(-1.0, 0.0, grid).is_err());
    assert!(bo1d_soliton(1.0, 0.0, Grid::new(2, 64, 1e4).unwrap()).is_err());
}

#[test]
fn soliton_residual_at_the_reference_grid() {
    // the profile's spectrum decays like e^{-|xi|}; at xi_max = 16 the residual is a few 1e-4
    let grid = Grid::new(1, 2048, 64.0 * PI).unwrap();
    let r = soliton_residual(1.0, 0.0, grid).unwrap();
    assert!(r <= 5e-4, "{r:e}");
}

#[test]
fn soliton_residual_at_a_finer_grid() {
    let grid = Grid::new(1, 32768, 256.0 * PI).unwrap();
    let r = soliton_residual(1.0, 0.0, grid).unwrap();
    assert!(r <= 1e-6, "{r:e}");
}

#[test]
fn recentering_recovers_a_translated_profile() {
    let grid = Grid::new(1, 1024, 32.0 * PI).unwrap();
    let u = RealField::from_fn(grid, |x| soliton_profile(1.0, 2.345, x[0]));
    let (err, shift) = recentered_shape_error(&u, 1.0, 2.0, 1.0).unwrap();
    assert!(err <= 1e-9);
    assert!((shift - 2.345).abs() <= 1e-6);
}

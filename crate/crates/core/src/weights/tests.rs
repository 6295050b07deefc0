use std::f64::consts::PI;

use super::*;
use crate::multi_index::MultiIndex;
use crate::sampling::{band_limited, gaussian};
use crate::solver::{evolve, SolverConfig};
use crate::spectral::ops::fractional;
use crate::spectral::{Grid, RealField};

#[test]
fn truncated_weight_endpoints() {
    let grid = Grid::new(2, 64, 40.0).unwrap();
    let w = TruncatedWeight::new(grid, 4.0).unwrap();
    assert_eq!(w.radial(0.0), 1.0);
    assert_eq!(w.radial(12.0), 8.0);
    assert_eq!(w.radial(30.0), 8.0);
    for r in [0.0, 0.5, 2.0, 3.9, 4.0] {
        assert!((w.radial(r) - japanese_bracket(r)).abs() <= 1e-12);
    }
    assert!(w.fits_box());
    // the first sample is the box corner
    assert_eq!(w.values().values()[0], 2.0 * 4.0);
    assert!(TruncatedWeight::new(grid, 0.0).is_err());
    assert!(TruncatedWeight::new(grid, -1.0).is_err());
    assert!(TruncatedWeight::new(grid, 1.0).is_err());
}

#[test]
fn truncated_weight_is_monotone_with_slope_at_most_one() {
    for scale in [2.0, 4.0, 8.0, 16.0, 100.0] {
        let radii: Vec<f64> = (0..=10_000).map(|i| 4.0 * scale * i as f64 / 1e4).collect();
        let vals: Vec<f64> = radii.iter().map(|&r| truncated_radial(scale, r)).collect();
        let mut curvature_constant = 0.0f64;
        for i in 1..radii.len() {
            let slope = (vals[i] - vals[i - 1]) / (radii[i] - radii[i - 1]);
            assert!(slope >= -1e-12, "N = {scale}: slope {slope}");
            assert!(slope <= 1.0 + 1e-12, "N = {scale}: slope {slope}");
            if i + 1 < radii.len() {
                let h = radii[i] - radii[i - 1];
                let second = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (h * h);
                curvature_constant = curvature_constant.max(second * japanese_bracket(radii[i]).powi(3));
            }
        }
        // second derivative stays below a fixed multiple of d^2 <x>
        assert!(curvature_constant <= 1.01, "N = {scale}: {curvature_constant}");
    }
}

#[test]
fn weighted_norm_basics() {
    let grid = Grid::new(1, 256, 12.0).unwrap();
    let ones = RealField::from_fn(grid, |_| 1.0);
    let u = gaussian(grid, [0.0; 3], 1.0, 1.0);
    assert_eq!(weighted_l2(&RealField::zeros(grid), &ones, 2.0).unwrap(), 0.0);
    assert!((weighted_l2(&u, &ones, 3.0).unwrap() - u.l2_norm()).abs() <= 1e-14);
    // int (1 + x^2)^2 e^{-2x^2} dx = sqrt(pi/2) (1 + 1/2 + 3/16)
    let exact = ((PI / 2.0).sqrt() * 27.0 / 16.0).sqrt();
    let got = weighted_l2(&u, &bracket_weight(grid), 2.0).unwrap();
    assert!((got - exact).abs() <= 1e-6 * exact);
    assert!(weighted_l2(&u, &RealField::zeros(grid), 1.0).is_err());
}

#[test]
fn truncated_norms_increase_to_the_full_weight() {
    let grid = Grid::new(2, 128, 64.0).unwrap();
    // compactly supported bump of radius 10
    let u = RealField::from_fn(grid, |x| {
        let r2 = x[0] * x[0] + x[1] * x[1];
        if r2 < 100.0 {
            (1.0 - r2 / 100.0).powi(3)
        } else {
            0.0
        }
    });
    let full = weighted_l2(&u, &bracket_weight(grid), 1.5).unwrap();
    let mut last = 0.0;
    for scale in [2.0, 3.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        let w = TruncatedWeight::new(grid, scale).unwrap();
        let v = weighted_l2(&u, w.values(), 1.5).unwrap();
        assert!(v >= last && v <= full * (1.0 + 1e-14));
        if scale >= 10.0 {
            assert!((v - full).abs() <= 1e-14 * full);
        }
        last = v;
    }
}

#[test]
fn conserved_quantities_of_simple_fields() {
    let grid = Grid::new(1, 64, 3.0).unwrap();
    let z = conserved(&RealField::zeros(grid));
    assert_eq!((z.integral, z.l2_squared, z.hamiltonian), (0.0, 0.0, 0.0));
    let l = grid.half_length();
    let c = conserved(&RealField::from_fn(grid, |x| (x[0] * PI / l).cos()));
    assert!(c.integral.abs() <= 1e-13);
    assert!((c.l2_squared - l).abs() <= 1e-13);
}

#[test]
fn hamiltonian_by_two_routes() {
    for (d, n) in [(1, 128), (2, 64)] {
        let grid = Grid::new(d, n, 5.0).unwrap();
        let u = band_limited(grid, 31, (n / 4) as i64, false);
        let spectral = conserved(&u).hamiltonian;
        let half = fractional(&u, 0.5).unwrap();
        let physical: f64 = half
            .values()
            .iter()
            .zip(u.values())
            .map(|(h, v)| h * h - v * v * v / 3.0)
            .sum::<f64>()
            * grid.cell_volume();
        assert!((spectral - physical).abs() <= 1e-10 * spectral.abs().max(1.0));
    }
}

#[test]
fn moments_of_gaussians() {
    let grid = Grid::new(2, 128, 12.0).unwrap();
    let u = gaussian(grid, [0.0; 3], 1.3, 1.0);
    assert!((moment(&u, &MultiIndex::zero()).unwrap() - u.integral()).abs() <= 1e-15);
    assert!(moment(&u, &MultiIndex::unit(0)).unwrap().abs() <= 1e-12);
    let a = [1.25, -0.5, 0.0];
    let v = gaussian(grid, a, 1.0, 2.0);
    let i = v.integral();
    for (axis, c) in a.iter().take(2).enumerate() {
        let m = moment(&v, &MultiIndex::unit(axis)).unwrap();
        assert!((m - i * c).abs() <= 1e-8);
    }
    assert!(moment(&v, &MultiIndex::unit(2)).is_err());
}

#[test]
fn t_star_examples() {
    let grid = Grid::new(1, 512, 20.0).unwrap();
    // A e^{-(x-a)^2}: M = A^2 sqrt(pi/2), int x u = A a sqrt(pi)
    let amp = (4.0 / (PI / 2.0).sqrt()).sqrt();
    let a = -1.0 / (amp * PI.sqrt());
    let u = gaussian(grid, [a, 0.0, 0.0], 1.0, amp);
    assert!((moment(&u, &MultiIndex::unit(0)).unwrap() + 1.0).abs() <= 1e-12);
    assert!((t_star(&u).unwrap() - 1.0).abs() <= 1e-12);
    let centered = gaussian(grid, [0.0; 3], 1.0, 1.0);
    assert!(t_star(&centered).unwrap().abs() <= 1e-14);
    assert!(matches!(
        t_star(&RealField::zeros(grid)),
        Err(crate::HboError::ZeroDatum)
    ));
}

#[test]
fn zero_crossing_interpolates() {
    let t = [0.0, 1.0, 2.0, 3.0];
    assert_eq!(zero_crossing(&t, &[0.0, -1.0, 1.0, 3.0]), Some(1.5));
    assert_eq!(zero_crossing(&t, &[0.0, 1.0, 2.0, 3.0]), None);
    let fit = fit_line(&t, &[1.0, 3.0, 5.0, 7.0]).unwrap();
    assert!((fit.slope - 2.0).abs() < 1e-15 && (fit.intercept - 1.0).abs() < 1e-15);
    assert_eq!(cumulative_trapezoid(&t, &[1.0; 4]), vec![0.0, 1.0, 2.0, 3.0]);
}

#[test]
fn functionals_of_the_zero_solution() {
    let grid = Grid::new(2, 16, 4.0).unwrap();
    let config = SolverConfig::new(0.05, 0.5).unwrap().with_snapshot_every(2);
    let traj = evolve(&RealField::zeros(grid), &config).unwrap();
    let c = c_functional(&traj).unwrap();
    assert!(c.duhamel.iter().chain(&c.by_parts).all(|v| *v == 0.0));
    assert_eq!(moment_identity_residual(&traj, 0).unwrap(), 0.0);
}

#[test]
fn moment_law_on_a_short_run() {
    let grid = Grid::new(2, 128, 16.0).unwrap();
    let u0 = gaussian(grid, [0.3, 0.0, 0.0], 1.5, 1.0);
    let config = SolverConfig::new(2e-3, 0.2).unwrap().with_snapshot_every(10);
    let traj = evolve(&u0, &config).unwrap();
    let law = moment_law(&traj, 0).unwrap();
    assert!(law.slope_error() <= 1e-3, "{law:?}");
    assert!(moment_identity_residual(&traj, 1).unwrap() <= 1e-10);
    let c = c_functional(&traj).unwrap();
    assert!(c.route_discrepancy() <= 1e-4);
    assert!(c.closed_form_error() <= 1e-4);
}

#[test]
fn weight_bound_constant_is_uniform_in_n() {
    for theta in [0.5, 1.0, 2.0] {
        for (alpha, beta) in [
            (MultiIndex::unit(0), MultiIndex::zero()),
            (MultiIndex::unit(1), MultiIndex::unit(0)),
            (MultiIndex::new(&[1, 1]).unwrap(), MultiIndex::new(&[2, 0]).unwrap()),
            (MultiIndex::pure(0, 2), MultiIndex::new(&[1, 1]).unwrap()),
        ] {
            let report = weight_bound_constants(&[4.0, 8.0, 16.0], theta, &alpha, &beta, 400).unwrap();
            assert!(report.max_constant().is_finite());
            assert!(report.max_constant() <= 10.0, "{report:?}");
            assert!(report.spread() <= 1.5, "{report:?}");
        }
    }
}

#[test]
fn diagnostics_csv_layout() {
    let grid = Grid::new(2, 16, 6.0).unwrap();
    let u = gaussian(grid, [0.0; 3], 1.0, 1.0);
    let rec = DiagnosticsRecord::compute(&u, 0.0, &DiagnosticsSettings::default());
    let header = rec.csv_header();
    assert_eq!(&header[..4], &["t", "I", "M", "H"]);
    assert!(header.contains(&"m_100".to_string()) && header.contains(&"m_010".to_string()));
    assert_eq!(header.last().unwrap(), "boundary_max");
    assert_eq!(header.len(), rec.csv_row().len());
    assert!(rec.l2_squared >= 0.0);
    let norms: Vec<f64> = rec.weighted_norms.iter().map(|p| p.1).collect();
    assert!(norms.windows(2).all(|w| w[1] >= w[0]));
    let mut out = Vec::new();
    write_csv(&[rec.clone(), rec], &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 3);
}

#[test]
fn gamma_commutation_is_small_for_well_contained_data() {
    let grid = Grid::new(2, 128, 24.0).unwrap();
    let f = crate::sampling::dx1_gaussian(grid, [0.0; 3], 1.0, 1.0);
    for axis in 0..2 {
        let defect = gamma_commutation_defect(&f, 0.5, axis).unwrap();
        assert!(defect.is_finite() && defect < 0.1, "axis {axis}: {defect:e}");
    }
}

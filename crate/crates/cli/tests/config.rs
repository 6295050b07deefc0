use std::f64::consts::PI;
use std::path::PathBuf;

use hbo_cli::{parse_config, CliError, ExperimentConfig, GridSpec, InitialData, Scenario};
use hbo_core::solver::SolverConfig;
use proptest::prelude::*;

#[test]
fn minimal_soliton_config_gets_documented_defaults() {
    let c = parse_config("scenario = \"soliton_1d\"\n").unwrap();
    assert_eq!(
        c.grid,
        GridSpec {
            dim: 1,
            n: 2048,
            half_length: 64.0 * PI
        }
    );
    assert_eq!(c.initial_data, InitialData::Soliton { c: 1.0, x0: 0.0 });
    assert_eq!((c.solver.dt, c.solver.final_time), (1e-3, 5.0));
    assert_eq!(c.solver.dealias_fraction, 2.0 / 3.0);
    // ceil(5 / 1e-3 / 200)
    assert_eq!(c.solver.snapshot_every, 25);
    assert_eq!(c.output_dir, PathBuf::from("out/soliton_1d"));
}

#[test]
fn partial_sections_keep_remaining_defaults() {
    let c = parse_config("scenario = \"conservation_2d\"\n[grid]\nn = 64\n[solver]\nfinal_time = 0.1\n").unwrap();
    assert_eq!(
        c.grid,
        GridSpec {
            dim: 2,
            n: 64,
            half_length: 16.0
        }
    );
    assert_eq!(c.solver.dt, 5e-4);
    assert_eq!(c.solver.snapshot_every, 1);
}

#[test]
fn negative_dt_names_the_field() {
    let err = parse_config("scenario = \"soliton_1d\"\n[solver]\ndt = -1e-3\n").unwrap_err();
    assert!(matches!(&err, CliError::Invalid { field, .. } if field == "solver"));
    assert!(err.to_string().contains("dt"), "{err}");
}

#[test]
fn unknown_keys_are_rejected_with_line_numbers() {
    for (text, line) in [
        ("scenario = \"moment_law\"\n\nfoo = 1\n", 3),
        ("scenario = \"moment_law\"\n[grid]\nn = 64\nlength = 2.0\n", 4),
        ("scenario = \"moment_law\"\n[initial_data]\nkind = \"gaussian\"\nwidth = 1.0\namplitude = 1.0\nsigma = 2.0\n", 2),
    ] {
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)));
        assert!(err.to_string().contains(&format!("line {line}")), "{err}");
    }
}

#[test]
fn type_errors_report_line_numbers() {
    let err = parse_config("scenario = \"moment_law\"\n[solver]\ndt = \"small\"\n").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
    let err = parse_config("scenario = \"nope\"\n").unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");
}

#[test]
fn scenario_constraints_are_enforced() {
    for text in [
        "scenario = \"soliton_1d\"\n[grid]\ndim = 2\n",
        "scenario = \"conservation_2d\"\n[grid]\ndim = 1\n",
        "scenario = \"identity_suite\"\n[grid]\nn = 64\n",
        "scenario = \"identity_suite\"\n[grid]\nhalf_length = 8.0\n",
        "scenario = \"decay_dichotomy\"\n[initial_data]\nkind = \"custom_file\"\npath = \"u.txt\"\n",
        "scenario = \"moment_law\"\n[grid]\nn = 100\n",
        "scenario = \"moment_law\"\nweight_N_list = [1.0]\n",
        "scenario = \"moment_law\"\ndecay_exponents = [-1.0]\n",
        "scenario = \"moment_law\"\n[initial_data]\nkind = \"gaussian\"\nwidth = 0.0\namplitude = 1.0\n",
        "scenario = \"moment_law\"\n[initial_data]\nkind = \"gaussian\"\ncenter = [0.0, 0.0, 0.0]\nwidth = 1.0\namplitude = 1.0\n",
    ] {
        assert!(matches!(parse_config(text), Err(CliError::Invalid { .. })), "{text}");
    }
}

fn pow2() -> impl Strategy<Value = usize> {
    (3u32..=11).prop_map(|k| 1usize << k)
}

fn finite(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    lo..hi
}

fn valid_config() -> impl Strategy<Value = ExperimentConfig> {
    let scenario = prop::sample::select(Scenario::ALL.to_vec());
    let solver = (
        finite(1e-4, 1e-1),
        1u32..50,
        finite(0.1, 1.0),
        1usize..40,
        any::<bool>(),
    )
        .prop_map(
            |(dt, steps, dealias_fraction, snapshot_every, nonlinear)| SolverConfig {
                dt,
                final_time: dt * f64::from(steps),
                dealias_fraction,
                snapshot_every,
                nonlinear,
            },
        );
    let gaussian = (
        prop::collection::vec(finite(-5.0, 5.0), 0..=2),
        finite(0.1, 4.0),
        finite(-5.0, 5.0),
        any::<bool>(),
    )
        .prop_map(|(center, width, amplitude, derivative)| {
            if derivative {
                InitialData::Dx1Gaussian {
                    center,
                    width,
                    amplitude,
                }
            } else {
                InitialData::Gaussian {
                    center,
                    width,
                    amplitude,
                }
            }
        });
    (
        scenario,
        any::<u32>(),
        "[a-z]{1,8}(/[a-z0-9_]{1,8}){0,2}",
        prop::collection::vec(finite(0.0, 4.0), 0..4),
        prop::collection::vec(finite(2.0, 64.0), 0..4),
        pow2(),
        finite(1.0, 100.0),
        solver,
        gaussian,
        (finite(0.1, 4.0), finite(-10.0, 10.0)),
    )
        .prop_map(
            |(scenario, seed, dir, decay_exponents, weight_n_list, n, half_length, solver, gaussian, (c, x0))| {
                let (dim, n, half_length, initial_data) = match scenario {
                    Scenario::Soliton1d => (1, n, half_length, InitialData::Soliton { c, x0 }),
                    Scenario::IdentitySuite => (2, n.max(128), 16.0, gaussian),
                    _ => (2, n, half_length, gaussian),
                };
                ExperimentConfig {
                    scenario,
                    seed: u64::from(seed),
                    output_dir: PathBuf::from(dir),
                    decay_exponents,
                    weight_n_list,
                    grid: GridSpec { dim, n, half_length },
                    solver,
                    initial_data,
                }
            },
        )
}

proptest! {
    #[test]
    fn serialized_configs_parse_back_equal(config in valid_config()) {
        prop_assert!(config.validate().is_ok());
        let text = config.to_toml();
        let parsed = parse_config(&text).unwrap();
        prop_assert_eq!(&parsed, &config);
        prop_assert_eq!(parsed.to_toml(), text);
    }
}

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use hbo_core::solver::{default_snapshot_every, SolverConfig, DEFAULT_DEALIAS_FRACTION};
use hbo_core::weights::MIN_TRUNCATION;
use hbo_core::{Grid, RealField};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    #[serde(rename = "soliton_1d")]
    Soliton1d,
    #[serde(rename = "conservation_2d")]
    Conservation2d,
    MomentLaw,
    TStarDemo,
    DecayDichotomy,
    CommutatorSweep,
    IdentitySuite,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::Soliton1d,
        Scenario::Conservation2d,
        Scenario::MomentLaw,
        Scenario::TStarDemo,
        Scenario::DecayDichotomy,
        Scenario::CommutatorSweep,
        Scenario::IdentitySuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Soliton1d => "soliton_1d",
            Scenario::Conservation2d => "conservation_2d",
            Scenario::MomentLaw => "moment_law",
            Scenario::TStarDemo => "t_star_demo",
            Scenario::DecayDichotomy => "decay_dichotomy",
            Scenario::CommutatorSweep => "commutator_sweep",
            Scenario::IdentitySuite => "identity_suite",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Scenario::Soliton1d => "1D soliton transported for T and compared to the shifted profile",
            Scenario::Conservation2d => "drift of I, M and H along a 2D run",
            Scenario::MomentLaw => "linear growth of the x1 moment and constancy of the x2 moment",
            Scenario::TStarDemo => "zero of the time-integrated x1 moment against t*",
            Scenario::DecayDichotomy => "cone-probe exponent for mean and zero-mean data",
            Scenario::CommutatorSweep => "Riesz commutator ratios over random band-limited pairs",
            Scenario::IdentitySuite => "Riesz-calculus identities at two resolutions",
        }
    }

    fn defaults(self) -> Defaults {
        let gaussian = |center: [f64; 2], width: f64, amplitude: f64| InitialData::Gaussian {
            center: vec![center[0], center[1]],
            width,
            amplitude,
        };
        match self {
            Scenario::Soliton1d => Defaults {
                grid: GridSpec::new(1, 2048, 64.0 * PI),
                dt: 1e-3,
                final_time: 5.0,
                nonlinear: true,
                initial_data: InitialData::Soliton { c: 1.0, x0: 0.0 },
            },
            Scenario::Conservation2d => Defaults {
                grid: GridSpec::new(2, 256, 16.0),
                dt: 5e-4,
                final_time: 1.0,
                nonlinear: true,
                initial_data: gaussian([0.0, 0.0], 1.5, 1.0),
            },
            Scenario::MomentLaw => Defaults {
                grid: GridSpec::new(2, 128, 16.0),
                dt: 1e-3,
                final_time: 0.5,
                nonlinear: true,
                initial_data: gaussian([0.3, -0.2], 1.0, 1.5),
            },
            Scenario::TStarDemo => Defaults {
                grid: GridSpec::new(2, 512, 64.0),
                dt: 2e-3,
                final_time: 1.5,
                nonlinear: true,
                initial_data: gaussian([-0.5, 0.0], 1.0, 4.0),
            },
            Scenario::DecayDichotomy => Defaults {
                grid: GridSpec::new(2, 256, 64.0),
                dt: 1e-2,
                final_time: 1.0,
                nonlinear: false,
                initial_data: gaussian([0.0, 0.0], 1.0, 1.0),
            },
            Scenario::CommutatorSweep => Defaults {
                grid: GridSpec::new(2, 128, 8.0),
                dt: 1e-3,
                final_time: 1.0,
                nonlinear: true,
                initial_data: gaussian([0.0, 0.0], 1.0, 1.0),
            },
            Scenario::IdentitySuite => Defaults {
                grid: GridSpec::new(2, 128, hbo_core::probes::SUITE_HALF_LENGTH),
                dt: 1e-3,
                final_time: 1.0,
                nonlinear: true,
                initial_data: gaussian([0.0, 0.0], 1.0, 1.0),
            },
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Defaults {
    grid: GridSpec,
    dt: f64,
    final_time: f64,
    nonlinear: bool,
    initial_data: InitialData,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub dim: usize,
    pub n: usize,
    pub half_length: f64,
}

impl GridSpec {
    fn new(dim: usize, n: usize, half_length: f64) -> Self {
        Self { dim, n, half_length }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dim, self.n, self.half_length).map_err(|e| CliError::invalid("grid", e.to_string()))
    }
}

/// Initial datum, selected by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    /// `A exp(-|x - center|^2 / width^2)`.
    Gaussian {
        #[serde(default)]
        center: Vec<f64>,
        width: f64,
        amplitude: f64,
    },
    /// x1-derivative of the Gaussian above; zero mean.
    Dx1Gaussian {
        #[serde(default)]
        center: Vec<f64>,
        width: f64,
        amplitude: f64,
    },
    /// `4c / (1 + c^2 (x - x0)^2)`, one dimension only.
    Soliton { c: f64, x0: f64 },
    /// Whitespace-separated samples in storage order, relative to the config file.
    CustomFile { path: PathBuf },
}

impl InitialData {
    fn validate(&self, dim: usize) -> Result<()> {
        match self {
            InitialData::Gaussian {
                center,
                width,
                amplitude,
            }
            | InitialData::Dx1Gaussian {
                center,
                width,
                amplitude,
            } => {
                if center.len() > dim {
                    return Err(CliError::invalid(
                        "initial_data.center",
                        format!("{} components for a {dim}-dimensional grid", center.len()),
                    ));
                }
                if center.iter().any(|c| !c.is_finite()) {
                    return Err(CliError::invalid("initial_data.center", "must be finite"));
                }
                if !(width.is_finite() && *width > 0.0) {
                    return Err(CliError::invalid(
                        "initial_data.width",
                        format!("{width} must be positive"),
                    ));
                }
                if !amplitude.is_finite() {
                    return Err(CliError::invalid("initial_data.amplitude", "must be finite"));
                }
            }
            InitialData::Soliton { c, x0 } => {
                if dim != 1 {
                    return Err(CliError::invalid("initial_data.kind", "soliton data need dim = 1"));
                }
                if !(c.is_finite() && *c > 0.0) {
                    return Err(CliError::invalid("initial_data.c", format!("{c} must be positive")));
                }
                if !x0.is_finite() {
                    return Err(CliError::invalid("initial_data.x0", "must be finite"));
                }
            }
            InitialData::CustomFile { path } => {
                if path.as_os_str().is_empty() {
                    return Err(CliError::invalid("initial_data.path", "must not be empty"));
                }
            }
        }
        Ok(())
    }

    /// Samples the datum on `grid`; custom files are read relative to `base_dir`.
    pub fn build(&self, grid: Grid, base_dir: &Path) -> Result<RealField> {
        use hbo_core::sampling::{dx1_gaussian, gaussian};
        let center3 = |c: &[f64]| {
            let mut out = [0.0; 3];
            out[..c.len()].copy_from_slice(c);
            out
        };
        Ok(match self {
            InitialData::Gaussian {
                center,
                width,
                amplitude,
            } => gaussian(grid, center3(center), *width, *amplitude),
            InitialData::Dx1Gaussian {
                center,
                width,
                amplitude,
            } => dx1_gaussian(grid, center3(center), *width, *amplitude),
            InitialData::Soliton { c, x0 } => hbo_core::solver::bo1d_soliton(*c, *x0, grid)?,
            InitialData::CustomFile { path } => {
                let path = base_dir.join(path);
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                let values = parse_samples(&text)?;
                if values.len() != grid.len() {
                    return Err(CliError::invalid(
                        "initial_data.path",
                        format!(
                            "{} holds {} samples, grid needs {}",
                            path.display(),
                            values.len(),
                            grid.len()
                        ),
                    ));
                }
                RealField::new(grid, values)?
            }
        })
    }
}

fn parse_samples(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split_whitespace() {
            let v: f64 = token.parse().map_err(|_| {
                CliError::invalid(
                    "initial_data.path",
                    format!("line {}: bad sample {token:?}", line_no + 1),
                )
            })?;
            values.push(v);
        }
    }
    Ok(values)
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub decay_exponents: Vec<f64>,
    #[serde(rename = "weight_N_list")]
    pub weight_n_list: Vec<f64>,
    pub grid: GridSpec,
    pub solver: SolverConfig,
    pub initial_data: InitialData,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    dim: Option<usize>,
    n: Option<usize>,
    half_length: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    dt: Option<f64>,
    final_time: Option<f64>,
    dealias_fraction: Option<f64>,
    snapshot_every: Option<usize>,
    nonlinear: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Scenario,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    decay_exponents: Option<Vec<f64>>,
    #[serde(rename = "weight_N_list")]
    weight_n_list: Option<Vec<f64>>,
    grid: Option<RawGrid>,
    solver: Option<RawSolver>,
    initial_data: Option<InitialData>,
}

/// Parses a TOML experiment document, fills scenario defaults and validates it.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let defaults = raw.scenario.defaults();
    let grid = raw.grid.map_or(defaults.grid, |g| GridSpec {
        dim: g.dim.unwrap_or(defaults.grid.dim),
        n: g.n.unwrap_or(defaults.grid.n),
        half_length: g.half_length.unwrap_or(defaults.grid.half_length),
    });
    let solver = match raw.solver {
        None => SolverConfig {
            dt: defaults.dt,
            final_time: defaults.final_time,
            dealias_fraction: DEFAULT_DEALIAS_FRACTION,
            snapshot_every: default_snapshot_every(defaults.dt, defaults.final_time),
            nonlinear: defaults.nonlinear,
        },
        Some(s) => {
            let dt = s.dt.unwrap_or(defaults.dt);
            let final_time = s.final_time.unwrap_or(defaults.final_time);
            SolverConfig {
                dt,
                final_time,
                dealias_fraction: s.dealias_fraction.unwrap_or(DEFAULT_DEALIAS_FRACTION),
                snapshot_every: s
                    .snapshot_every
                    .unwrap_or_else(|| default_snapshot_every(dt, final_time)),
                nonlinear: s.nonlinear.unwrap_or(defaults.nonlinear),
            }
        }
    };
    let config = ExperimentConfig {
        scenario: raw.scenario,
        seed: raw.seed.unwrap_or(0),
        output_dir: raw
            .output_dir
            .unwrap_or_else(|| Path::new("out").join(raw.scenario.name())),
        decay_exponents: raw.decay_exponents.unwrap_or_else(|| vec![0.0, 1.0, 2.0]),
        weight_n_list: raw.weight_n_list.unwrap_or_else(|| vec![4.0, 8.0, 16.0]),
        grid,
        solver,
        initial_data: raw.initial_data.unwrap_or(defaults.initial_data),
    };
    config.validate()?;
    Ok(config)
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let grid = self.grid.grid()?;
        let dim = grid.dim();
        self.solver
            .validate()
            .map_err(|e| CliError::invalid("solver", e.to_string().replace("invalid parameter: ", "")))?;
        self.initial_data.validate(dim)?;
        if let Some(r) = self.decay_exponents.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(CliError::invalid(
                "decay_exponents",
                format!("{r} must be finite and non-negative"),
            ));
        }
        if let Some(n) = self
            .weight_n_list
            .iter()
            .find(|n| !(n.is_finite() && **n >= MIN_TRUNCATION))
        {
            return Err(CliError::invalid(
                "weight_N_list",
                format!("{n} must be at least {MIN_TRUNCATION}"),
            ));
        }
        let need_dim = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::invalid(
                    "grid.dim",
                    format!("{} needs {what}, got {dim}", self.scenario),
                ))
            }
        };
        match self.scenario {
            Scenario::Soliton1d => {
                need_dim(dim == 1, "dim = 1")?;
                if !matches!(self.initial_data, InitialData::Soliton { .. }) {
                    return Err(CliError::invalid("initial_data.kind", "soliton_1d needs soliton data"));
                }
            }
            Scenario::Conservation2d | Scenario::MomentLaw | Scenario::TStarDemo => need_dim(dim >= 2, "dim >= 2")?,
            Scenario::DecayDichotomy => {
                need_dim(dim >= 2, "dim >= 2")?;
                if !matches!(
                    self.initial_data,
                    InitialData::Gaussian { .. } | InitialData::Dx1Gaussian { .. }
                ) {
                    return Err(CliError::invalid(
                        "initial_data.kind",
                        "decay_dichotomy needs gaussian or dx1_gaussian data",
                    ));
                }
            }
            Scenario::CommutatorSweep => need_dim(dim == 2, "dim = 2")?,
            Scenario::IdentitySuite => {
                need_dim(dim == 2, "dim = 2")?;
                if self.grid.half_length != hbo_core::probes::SUITE_HALF_LENGTH {
                    return Err(CliError::invalid(
                        "grid.half_length",
                        format!("identity_suite runs at {}", hbo_core::probes::SUITE_HALF_LENGTH),
                    ));
                }
                if self.grid.n < 128 {
                    return Err(CliError::invalid("grid.n", "identity_suite needs n >= 128"));
                }
            }
        }
        Ok(())
    }

    /// Canonical TOML rendering; parsing it gives back an equal config.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

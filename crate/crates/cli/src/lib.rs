//! Config parsing, scenario registry and artifact output for `hbo-lab`.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;

pub use config::{load_config, parse_config, ExperimentConfig, GridSpec, InitialData, Scenario};
pub use error::{CliError, Result};
pub use output::{emit_plot_data, Criterion, Relation, RunStatus, Series, Summary, OUTPUT_ROOT_ENV};
pub use scenarios::{exit, run_scenario, RunReport};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hbo_cli::scenarios::error_exit_code;
use hbo_cli::{exit, load_config, run_scenario, Scenario};

/// Numerical experiments for the higher-dimensional Benjamin-Ono equation.
#[derive(Parser)]
#[command(name = "hbo-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a TOML config.
    Run { config: PathBuf },
    /// Print the registered scenario names.
    ListScenarios,
    /// Parse and validate a config without running it.
    Validate { config: PathBuf },
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { exit::USAGE } else { exit::PASS });
        }
    };
    let result = match cli.command {
        Command::ListScenarios => {
            for s in Scenario::ALL {
                println!("{:<18} {}", s.name(), s.description());
            }
            Ok(exit::PASS)
        }
        Command::Validate { config } => load_config(&config).map(|c| {
            print!("{}", c.to_toml());
            exit::PASS
        }),
        Command::Run { config } => load_config(&config)
            .and_then(|c| run_scenario(&c, base_dir(&config)))
            .map(|report| {
                for c in &report.summary.criteria {
                    println!(
                        "{} {} = {:e} ({:?} {:e})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.value,
                        c.relation,
                        c.threshold
                    );
                }
                if let Some(failure) = &report.summary.failure {
                    eprintln!("run stopped: {failure}");
                }
                eprintln!("artifacts in {}", report.output_dir.display());
                report.exit_code()
            }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}

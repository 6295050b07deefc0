use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

/// Environment variable that replaces the working directory as the output root.
pub const OUTPUT_ROOT_ENV: &str = "HBO_LAB_OUTPUT_ROOT";

/// Labeled `(x, y)` pairs for a two-column plot file.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(x_label: &str, y_label: &str, points: Vec<(f64, f64)>) -> Self {
        Self {
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            points,
        }
    }
}

/// Writes `series` as `# x y` followed by one line per point.
pub fn emit_plot_data(series: &Series, path: &Path) -> Result<()> {
    if series.points.is_empty() {
        return Err(CliError::EmptySeries(path.display().to_string()));
    }
    let mut text = format!("# {} {}\n", series.x_label, series.y_label);
    for (x, y) in &series.points {
        writeln!(text, "{x:e} {y:e}").expect("string write");
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    Below,
    AtLeast,
}

/// One acceptance check: measured value against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl Criterion {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, threshold: f64) -> Self {
        let passed = match relation {
            Relation::AtMost => value <= threshold,
            Relation::Below => value < threshold,
            Relation::AtLeast => value >= threshold,
        };
        Self {
            name: name.into(),
            value,
            threshold,
            relation,
            passed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    BlowUp,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: String,
    pub status: RunStatus,
    pub passed: bool,
    /// SHA-256 of the canonical config and any data file it reads.
    pub inputs_hash: String,
    pub config: ExperimentConfig,
    pub criteria: Vec<Criterion>,
    pub metrics: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub fn inputs_hash(config: &ExperimentConfig, extra: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(config.to_toml().as_bytes());
    hasher.update(extra);
    hasher.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").expect("string write");
        s
    })
}

/// `$HBO_LAB_OUTPUT_ROOT/output_dir`, or `output_dir` itself when the variable is unset
/// or the directory is absolute.
pub fn resolve_output_dir(output_dir: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_ROOT_ENV) {
        Some(root) if !root.is_empty() => PathBuf::from(root).join(output_dir),
        _ => output_dir.to_path_buf(),
    }
}

/// Collects artifacts for one run and remembers their file names.
pub struct ArtifactWriter {
    dir: PathBuf,
    written: Vec<String>,
}

impl ArtifactWriter {
    pub fn create(dir: PathBuf) -> Result<Self> {
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Self {
            dir,
            written: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn plot(&mut self, name: &str, series: &Series) -> Result<()> {
        emit_plot_data(series, &self.dir.join(name))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn bytes(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Writes `summary.json`, listing everything written before it.
    pub fn summary(&mut self, summary: &mut Summary) -> Result<()> {
        self.written.push("summary.json".to_string());
        summary.artifacts = self.written.clone();
        let mut json = serde_json::to_string_pretty(summary).expect("summary serializes");
        json.push('\n');
        let path = self.dir.join("summary.json");
        fs::write(&path, json).map_err(|e| CliError::io(&path, e))
    }
}

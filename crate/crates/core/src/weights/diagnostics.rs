use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::conserved::conserved;
use super::moments::{moment, profile_moment};
use super::weight::{bracket_weight, weighted_l2};
use crate::multi_index::MultiIndex;
use crate::spectral::RealField;

/// Boundary/peak ratio above which a snapshot is flagged.
pub const BOUNDARY_GUARD: f64 = 1e-8;

/// What to measure at each snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsSettings {
    /// Exponents `r` of the weighted norms `||<x>^r u||`.
    pub decay_exponents: Vec<f64>,
    pub guard_threshold: f64,
}

impl Default for DiagnosticsSettings {
    fn default() -> Self {
        Self {
            decay_exponents: vec![0.0, 1.0, 2.0],
            guard_threshold: BOUNDARY_GUARD,
        }
    }
}

/// Measurements taken on one snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// `I = int u`.
    pub integral: f64,
    /// `M = int u^2`.
    pub l2_squared: f64,
    pub hamiltonian: f64,
    /// `int x^beta u` for every `|beta| <= 3`.
    pub moments: Vec<(MultiIndex, f64)>,
    /// First moments of the pulled-back profile, one per axis.
    pub profile_moments: Vec<f64>,
    /// `(r, ||<x>^r u||)`.
    pub weighted_norms: Vec<(f64, f64)>,
    pub boundary_max: f64,
    pub boundary_warning: bool,
}

impl DiagnosticsRecord {
    pub fn compute(u: &RealField, t: f64, settings: &DiagnosticsSettings) -> Self {
        let grid = *u.grid();
        let dim = grid.dim();
        let c = conserved(u);
        let moments = (0..=3)
            .flat_map(|order| MultiIndex::of_order(order, dim))
            .map(|beta| (beta, moment(u, &beta).expect("index fits the grid")))
            .collect();
        let profile_moments = (0..dim)
            .map(|axis| profile_moment(u, t, axis).expect("axis fits the grid"))
            .collect();
        let bracket = bracket_weight(grid);
        let weighted_norms = settings
            .decay_exponents
            .iter()
            .map(|&r| (r, weighted_l2(u, &bracket, r).expect("positive weight")))
            .collect();
        let boundary_max = u.boundary_max();
        let peak = u.max_abs();
        Self {
            t,
            integral: c.integral,
            l2_squared: c.l2_squared,
            hamiltonian: c.hamiltonian,
            moments,
            profile_moments,
            weighted_norms,
            boundary_max,
            boundary_warning: peak > 0.0 && boundary_max > settings.guard_threshold * peak,
        }
    }

    /// Column names matching [`DiagnosticsRecord::csv_row`].
    pub fn csv_header(&self) -> Vec<String> {
        let mut cols: Vec<String> = ["t", "I", "M", "H"].iter().map(|s| s.to_string()).collect();
        cols.extend(self.moments.iter().map(|(b, _)| format!("m_{}", b.label(3))));
        cols.extend((0..self.profile_moments.len()).map(|a| format!("p_{}", a + 1)));
        cols.extend(self.weighted_norms.iter().map(|(r, _)| format!("wnorm_{r}")));
        cols.push("boundary_max".into());
        cols
    }

    pub fn csv_row(&self) -> Vec<f64> {
        let mut row = vec![self.t, self.integral, self.l2_squared, self.hamiltonian];
        row.extend(self.moments.iter().map(|(_, v)| *v));
        row.extend(&self.profile_moments);
        row.extend(self.weighted_norms.iter().map(|(_, v)| *v));
        row.push(self.boundary_max);
        row
    }
}

/// Writes one header line and one row per record, values in `{:e}` round-trip form.
pub fn write_csv<W: Write>(records: &[DiagnosticsRecord], mut out: W) -> io::Result<()> {
    let Some(first) = records.first() else {
        return Ok(());
    };
    writeln!(out, "{}", first.csv_header().join(","))?;
    for r in records {
        let row: Vec<String> = r.csv_row().iter().map(|v| format!("{v:e}")).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

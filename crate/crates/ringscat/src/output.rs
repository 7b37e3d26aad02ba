//! Deterministic run artifacts: `manifest.json`, `summary.json` and CSV
//! series with every float written at 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use ringscat_core::gridmodes::{ModeState, RadialGrid};

use crate::error::CliError;

/// Formats a float with 17 significant digits, enough to round-trip.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// SHA-256 over the node coordinates and radii of a lattice.
pub fn grid_hash(grid: &RadialGrid) -> String {
    let mut h = Sha256::new();
    h.update((grid.n as u64).to_le_bytes());
    for (x, r) in grid.x.iter().zip(&grid.r) {
        h.update(x.to_le_bytes());
        h.update(r.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// One thresholded quantity of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"<"`, `"<="`, `">"`, `">="` or `"=="` (booleans as 0/1).
    pub relation: String,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, relation: "<".into(), threshold, pass: value < threshold }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, relation: ">=".into(), threshold, pass: value >= threshold }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, relation: ">".into(), threshold, pass: value > threshold }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), value: if ok { 1.0 } else { 0.0 }, relation: "==".into(), threshold: 1.0, pass: ok }
    }
}

/// Machine-readable outcome of a scenario.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Measured quantities reported without a threshold.
    pub measurements: Vec<(String, f64)>,
}

impl Summary {
    pub fn new(scenario: &str) -> Self {
        Summary { scenario: scenario.into(), pass: true, checks: Vec::new(), measurements: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn measure(&mut self, name: impl Into<String>, v: f64) {
        self.measurements.push((name.into(), v));
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Directory receiving the artifacts of one run. `None` discards output.
#[derive(Clone, Debug)]
pub struct OutputDir {
    root: Option<PathBuf>,
}

impl OutputDir {
    pub fn new(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root)?;
        Ok(OutputDir { root: Some(root.to_path_buf()) })
    }

    /// Output sink that writes nothing, for in-process use.
    pub fn discard() -> Self {
        OutputDir { root: None }
    }

    pub fn path(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<(), CliError> {
        if let Some(root) = &self.root {
            let mut text = serde_json::to_string_pretty(value)?;
            text.push('\n');
            fs::write(root.join(name), text)?;
        }
        Ok(())
    }

    pub fn write_csv(&self, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
        if let Some(root) = &self.root {
            let mut w = csv::Writer::from_path(root.join(name))?;
            w.write_record(header)?;
            for row in rows {
                w.write_record(row.iter().map(|v| fmt17(*v)))?;
            }
            w.flush()?;
        }
        Ok(())
    }

    /// Snapshot `(x, Re u0, Im u0, Re u1, Im u1)`.
    pub fn write_state(&self, name: &str, grid: &RadialGrid, u: &ModeState) -> Result<(), CliError> {
        let rows: Vec<Vec<f64>> = (0..grid.n)
            .map(|i| vec![grid.x[i], u.u0[i].re, u.u0[i].im, u.u1[i].re, u.u1[i].im])
            .collect();
        self.write_csv(name, &["x", "re_u0", "im_u0", "re_u1", "im_u1"], &rows)
    }
}

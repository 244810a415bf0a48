//! Plot-data writers: plain CSV files an external plotting tool can consume.
//!
//! Every writer produces a deterministic byte stream for fixed inputs: floats
//! are formatted with Rust's shortest round-trip `Display`, so the files are
//! safe to compare byte-for-byte across runs and across worker counts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use riskkit::sim::PathMatrix;
use riskkit::var::ViolationRecord;
use riskkit::{Error, Result};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::invalid("plot_dir", format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| Error::invalid("plot_dir", format!("cannot write {}: {e}", path.display())))
}

/// `variance.csv`: one conditional-variance value per period, 1-based time.
pub fn write_variance_csv(dir: &Path, variance: &[f64]) -> Result<()> {
    let mut out = String::from("t,sigma2\n");
    for (i, v) in variance.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, v);
    }
    write_file(dir, "variance.csv", &out)
}

/// `gap.csv`: the trajectory gap from a divergence diagnostic, 1-based time.
pub fn write_gap_csv(dir: &Path, gap: &[f64]) -> Result<()> {
    let mut out = String::from("t,gap\n");
    for (i, g) in gap.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, g);
    }
    write_file(dir, "gap.csv", &out)
}

/// `paths.csv`: one simulated path per row, steps across columns. Column
/// `step0` is the initial price, so each row has `n_steps + 1` values.
pub fn write_paths_csv(dir: &Path, paths: &PathMatrix<f64>) -> Result<()> {
    let mut out = String::from("path");
    for step in 0..=paths.n_steps() {
        let _ = write!(out, ",step{step}");
    }
    out.push('\n');
    for (index, path) in paths.paths().enumerate() {
        let _ = write!(out, "{index}");
        for value in path {
            let _ = write!(out, ",{value}");
        }
        out.push('\n');
    }
    write_file(dir, "paths.csv", &out)
}

/// `violations.csv`: the per-period backtest log.
pub fn write_violations_csv(dir: &Path, log: &[ViolationRecord<f64>]) -> Result<()> {
    let mut out = String::from("index,return,var_value,violation\n");
    for record in log {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            record.index, record.return_value, record.var_value, record.violation
        );
    }
    write_file(dir, "violations.csv", &out)
}

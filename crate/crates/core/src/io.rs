//! CSV and JSON output.
//!
//! Floats are written with 17 significant digits so that they parse back to
//! the same binary value, which together with fixed iteration order makes the
//! files byte-reproducible.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{HistoryRow, RunOutcome, RunStatus, ScalingHistory, Snapshot};

/// Environment variable naming the directory under which runs write their output.
pub const OUTPUT_ROOT_VAR: &str = "GCLM_OUTPUT_ROOT";

/// Output root from the environment, defaulting to `gclm-out`.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("gclm-out"))
}

/// Round-trip float formatting.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A table with a header row and numeric columns.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::Invalid(format!("row has {} columns, header {}", row.len(), header.len())));
        }
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    fs::write(path, s)?;
    Ok(())
}

/// Parse a numeric CSV with a header row.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = fs::read_to_string(path)?;
    parse_csv(&text)
}

pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::Invalid("empty csv".into()))?
        .split(',')
        .map(|h| h.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Invalid(format!("csv row {}: {e}", i + 2)))?;
        if row.len() != header.len() {
            return Err(Error::Invalid(format!("csv row {} has {} columns", i + 2, row.len())));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// Column `name` of a parsed CSV.
pub fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Result<Vec<f64>> {
    let j = header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::Invalid(format!("csv has no column {name}")))?;
    Ok(rows.iter().map(|r| r[j]).collect())
}

pub const HISTORY_HEADER: [&str; 11] = [
    "tau",
    "t",
    "c_l",
    "c_omega",
    "gamma",
    "residual",
    "max_abs_omega",
    "x_m",
    "halfwidth",
    "log_c_omega",
    "log_c_l",
];

fn history_values(r: &HistoryRow) -> Vec<f64> {
    vec![
        r.tau,
        r.t,
        r.c_l,
        r.c_omega,
        r.gamma,
        r.residual,
        r.max_abs_omega,
        r.x_m,
        r.x2 - r.x1,
        r.log_c_omega,
        r.log_c_l,
    ]
}

pub fn write_history(path: &Path, history: &ScalingHistory) -> Result<()> {
    write_csv(path, &HISTORY_HEADER, history.rows.iter().map(history_values))
}

/// History rows as stored on disk. `x1` is set to 0 and `x2` to the half-width.
pub fn read_history(path: &Path) -> Result<ScalingHistory> {
    let (h, rows) = read_csv(path)?;
    let col = |n: &str| column(&h, &rows, n);
    let (tau, t, c_l, c_omega, gamma, residual, m, x_m, w) = (
        col("tau")?,
        col("t")?,
        col("c_l")?,
        col("c_omega")?,
        col("gamma")?,
        col("residual")?,
        col("max_abs_omega")?,
        col("x_m")?,
        col("halfwidth")?,
    );
    let lw = col("log_c_omega").ok();
    let ll = col("log_c_l").ok();
    let rows = (0..tau.len())
        .map(|i| HistoryRow {
            tau: tau[i],
            t: t[i],
            c_l: c_l[i],
            c_omega: c_omega[i],
            gamma: gamma[i],
            residual: residual[i],
            log_c_omega: lw.as_ref().map_or(f64::NAN, |v| v[i]),
            log_c_l: ll.as_ref().map_or(f64::NAN, |v| v[i]),
            max_abs_omega: m[i],
            x_m: x_m[i],
            x1: 0.0,
            x2: w[i],
        })
        .collect();
    Ok(ScalingHistory { rows })
}

pub const SNAPSHOT_HEADER: [&str; 4] = ["X", "Omega", "HOmega", "U"];

pub fn write_snapshot(path: &Path, s: &Snapshot) -> Result<()> {
    write_csv(
        path,
        &SNAPSHOT_HEADER,
        (0..s.x.len()).map(|j| vec![s.x[j], s.omega[j], s.hilbert[j], s.velocity[j]]),
    )
}

/// File name of the snapshot taken at `tau`.
pub fn snapshot_name(tau: f64) -> String {
    format!("snapshot_tau{}.csv", fmt_tau(tau))
}

fn fmt_tau(tau: f64) -> String {
    let mut s = String::new();
    let _ = write!(s, "{tau:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Machine-readable result of a simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub name: String,
    pub status: RunStatus,
    pub converged: bool,
    pub tau: f64,
    pub steps: usize,
    pub remeshes: usize,
    pub c_l: f64,
    pub c_omega: f64,
    pub gamma: f64,
    pub residual: f64,
    pub t: f64,
    pub blowup_time_estimate: Option<f64>,
    pub nodes: usize,
}

impl RunSummary {
    pub fn from_outcome(name: &str, out: &RunOutcome) -> Self {
        let last = out.history.last();
        Self {
            name: name.to_string(),
            status: out.status.clone(),
            converged: out.status == RunStatus::Converged,
            tau: out.state.tau,
            steps: out.steps,
            remeshes: out.remeshes,
            c_l: out.state.c_l,
            c_omega: out.state.c_omega,
            gamma: -out.state.c_l / out.state.c_omega,
            residual: last.map_or(f64::NAN, |r| r.residual),
            t: last.map_or(0.0, |r| r.t),
            blowup_time_estimate: out.history.blowup_time_estimate(),
            nodes: out.state.f.len(),
        }
    }
}

/// Pretty JSON with a trailing newline. Non-finite floats become `null`.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// Wall-clock timing, kept apart from the reproducible outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_s: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, 0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.csv");
        write_csv(&p, &["x", "y"], vec![vec![1.0, 0.1], vec![2.0, 1e-20]]).unwrap();
        let (h, rows) = read_csv(&p).unwrap();
        assert_eq!(h, vec!["x", "y"]);
        assert_eq!(column(&h, &rows, "y").unwrap(), vec![0.1, 1e-20]);
        assert!(column(&h, &rows, "z").is_err());
    }

    #[test]
    fn snapshot_names() {
        assert_eq!(snapshot_name(1.0), "snapshot_tau1.csv");
        assert_eq!(snapshot_name(2.25), "snapshot_tau2.25.csv");
    }
}

//! Time series recorded by the rescaling solver and their physical-time
//! reconstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One recorded time level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub tau: f64,
    /// Physical time `t(tau) = int_0^tau C_omega`.
    pub t: f64,
    pub c_l: f64,
    pub c_omega: f64,
    pub gamma: f64,
    pub residual: f64,
    /// `ln C_omega = int_0^tau c_omega`.
    pub log_c_omega: f64,
    /// `ln C_l = int_0^tau c_l`.
    pub log_c_l: f64,
    pub max_abs_omega: f64,
    pub x_m: f64,
    pub x1: f64,
    pub x2: f64,
}

pub const HISTORY_COLUMNS: [&str; 12] = [
    "tau",
    "t",
    "c_l",
    "c_omega",
    "gamma",
    "residual",
    "log_c_omega",
    "log_c_l",
    "max_abs_omega",
    "x_m",
    "x1",
    "x2",
];

impl HistoryRow {
    pub fn values(&self) -> [f64; 12] {
        [
            self.tau,
            self.t,
            self.c_l,
            self.c_omega,
            self.gamma,
            self.residual,
            self.log_c_omega,
            self.log_c_l,
            self.max_abs_omega,
            self.x_m,
            self.x1,
            self.x2,
        ]
    }

    pub fn from_values(v: &[f64]) -> Result<Self> {
        if v.len() != 12 {
            return Err(Error::Invalid(format!("history row has {} columns, expected 12", v.len())));
        }
        Ok(Self {
            tau: v[0],
            t: v[1],
            c_l: v[2],
            c_omega: v[3],
            gamma: v[4],
            residual: v[5],
            log_c_omega: v[6],
            log_c_l: v[7],
            max_abs_omega: v[8],
            x_m: v[9],
            x1: v[10],
            x2: v[11],
        })
    }
}

/// Rows ordered by strictly increasing `tau`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScalingHistory {
    pub rows: Vec<HistoryRow>,
}

impl ScalingHistory {
    pub fn last(&self) -> Option<&HistoryRow> {
        self.rows.last()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Estimate of the blowup time: `t + C_omega/|c_omega|` at the last row.
    pub fn blowup_time_estimate(&self) -> Option<f64> {
        let r = self.rows.last()?;
        (r.c_omega < 0.0).then(|| r.t + r.log_c_omega.exp() / -r.c_omega)
    }
}

/// Physical-time series reconstructed from the scaling factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSeries {
    pub tau: Vec<f64>,
    pub t: Vec<f64>,
    pub c_omega_cum: Vec<f64>,
    pub c_l_cum: Vec<f64>,
    /// `||omega(., t)||_inf = max|Omega| / C_omega`.
    pub max_abs_omega: Vec<f64>,
    /// Physical half-maximum width `(X_2 - X_1) / C_l`.
    pub width: Vec<f64>,
}

/// Physical series from the history. The integrals `ln C_omega`, `ln C_l` and
/// `t` accumulated at every solver step are used when present; otherwise they
/// are rebuilt from the recorded `c_omega`, `c_l` by the cumulative trapezoid rule.
pub fn reconstruct_physical(history: &ScalingHistory) -> Result<PhysicalSeries> {
    let rows = &history.rows;
    if rows.is_empty() {
        return Err(Error::Invalid("empty history".into()));
    }
    if rows.windows(2).any(|w| !(w[1].tau > w[0].tau)) {
        return Err(Error::Invalid("history tau is not strictly increasing".into()));
    }
    let n = rows.len();
    let recorded = rows.iter().all(|r| r.log_c_omega.is_finite() && r.log_c_l.is_finite() && r.t.is_finite());
    if recorded {
        return Ok(series(
            rows,
            rows.iter().map(|r| r.t).collect(),
            rows.iter().map(|r| r.log_c_omega).collect(),
            rows.iter().map(|r| r.log_c_l).collect(),
        ));
    }
    let mut log_w = vec![rows[0].log_c_omega; n];
    let mut log_l = vec![rows[0].log_c_l; n];
    let mut t = vec![rows[0].t; n];
    for i in 1..n {
        let dt = rows[i].tau - rows[i - 1].tau;
        log_w[i] = log_w[i - 1] + 0.5 * dt * (rows[i].c_omega + rows[i - 1].c_omega);
        log_l[i] = log_l[i - 1] + 0.5 * dt * (rows[i].c_l + rows[i - 1].c_l);
        t[i] = t[i - 1] + super::exp_integral(log_w[i - 1], log_w[i], dt);
    }
    Ok(series(rows, t, log_w, log_l))
}

fn series(rows: &[HistoryRow], t: Vec<f64>, log_w: Vec<f64>, log_l: Vec<f64>) -> PhysicalSeries {
    let c_omega_cum: Vec<f64> = log_w.iter().map(|v| v.exp()).collect();
    let c_l_cum: Vec<f64> = log_l.iter().map(|v| v.exp()).collect();
    PhysicalSeries {
        tau: rows.iter().map(|r| r.tau).collect(),
        max_abs_omega: rows.iter().zip(&c_omega_cum).map(|(r, c)| r.max_abs_omega / c).collect(),
        width: rows.iter().zip(&c_l_cum).map(|(r, c)| (r.x2 - r.x1) / c).collect(),
        t,
        c_omega_cum,
        c_l_cum,
    }
}

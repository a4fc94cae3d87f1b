//! Normalized inner profile around the dominant peak and profile comparison.

use serde::{Deserialize, Serialize};

use crate::analysis::peak::{peak_summary_of, PeakSummary};
use crate::error::{Error, Result};
use crate::spline::Spline;

/// `Omega_hat(X_hat) = Omega(X_m + w X_hat) / m` with `m = |Omega(X_m)|` and
/// `w = X_2 - X_1` the half-maximum width, so that `Omega_hat(0) = -1` (for a
/// negative peak) and `{Omega_hat < -1/2}` has length 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerProfile {
    pub x_hat: Vec<f64>,
    pub omega_hat: Vec<f64>,
    pub peak: PeakSummary,
}

impl InnerProfile {
    pub fn amplitude(&self) -> f64 {
        self.peak.value.abs()
    }

    pub fn width(&self) -> f64 {
        self.peak.width()
    }
}

/// Inner profile of the spline through `(x, omega)`, sampled at `samples`
/// uniform points on `[-extent, extent]`.
pub fn extract_inner_profile(x: &[f64], omega: &[f64], extent: f64, samples: usize) -> Result<InnerProfile> {
    let sp = Spline::natural(x, omega)?;
    let peak = peak_summary_of(&sp)?;
    let (lo, hi) = (x[0], x[x.len() - 1]);
    if !(peak.x1 > lo && peak.x2 < hi) {
        return Err(Error::Invalid("no half-maximum crossing on one side of the peak".into()));
    }
    if samples < 2 || !(extent > 0.0) {
        return Err(Error::Invalid("need extent > 0 and two or more samples".into()));
    }
    let w = peak.width();
    let m = peak.value.abs();
    let sign = -peak.value.signum();
    let x_hat: Vec<f64> = (0..samples).map(|i| -extent + 2.0 * extent * i as f64 / (samples - 1) as f64).collect();
    let mut omega_hat = Vec::with_capacity(samples);
    for &s in &x_hat {
        let xp = peak.x_m + w * s;
        if xp < lo || xp > hi {
            return Err(Error::Invalid(format!("inner window reaches {xp}, outside [{lo}, {hi}]")));
        }
        // orient so the peak value is -1
        omega_hat.push(sign * sp.eval(xp) / m);
    }
    Ok(InnerProfile { x_hat, omega_hat, peak })
}

/// Largest differences between two sampled profiles on a common window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileDistance {
    pub sup_abs: f64,
    /// `max |p - q| / |q|` over points where `q != 0`.
    pub sup_rel: f64,
    pub window: [f64; 2],
}

/// Compare `p` and `q` (each given by nodes and values) on `window`, after
/// spline resampling onto the union of both node sets inside the window plus
/// a uniform grid of `refine` points.
pub fn compare_profiles(p: (&[f64], &[f64]), q: (&[f64], &[f64]), window: [f64; 2], refine: usize) -> Result<ProfileDistance> {
    let sp = Spline::natural(p.0, p.1)?;
    let sq = Spline::natural(q.0, q.1)?;
    let lo = window[0].max(p.0[0]).max(q.0[0]);
    let hi = window[1].min(p.0[p.0.len() - 1]).min(q.0[q.0.len() - 1]);
    if !(lo < hi) {
        return Err(Error::Invalid("profiles do not overlap on the window".into()));
    }
    let mut pts: Vec<f64> = p.0.iter().chain(q.0).copied().filter(|&t| t >= lo && t <= hi).collect();
    let m = refine.max(2);
    pts.extend((0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64));
    let (mut sup_abs, mut sup_rel) = (0.0_f64, 0.0_f64);
    for t in pts {
        let (a, b) = (sp.eval(t), sq.eval(t));
        let d = (a - b).abs();
        sup_abs = sup_abs.max(d);
        if b != 0.0 {
            sup_rel = sup_rel.max(d / b.abs());
        }
    }
    Ok(ProfileDistance { sup_abs, sup_rel, window: [lo, hi] })
}

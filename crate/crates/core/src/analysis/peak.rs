//! Location, height and half-maximum window of the dominant peak of `|Omega|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spline::Spline;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakSummary {
    /// Location of the extremum.
    pub x_m: f64,
    /// Signed value of the profile at `x_m`.
    pub value: f64,
    /// Left point where `|Omega| = |value| / 2`.
    pub x1: f64,
    /// Right point where `|Omega| = |value| / 2`.
    pub x2: f64,
}

impl PeakSummary {
    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }
}

fn bisect(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> f64 {
    let glo = g(lo);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid) > 0.0) == (glo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Peak summary of the natural spline through `(x, omega)`.
pub fn peak_summary(x: &[f64], omega: &[f64]) -> Result<PeakSummary> {
    let spline = Spline::natural(x, omega)?;
    peak_summary_of(&spline)
}

/// Peak summary of a spline.
pub fn peak_summary_of(spline: &Spline) -> Result<PeakSummary> {
    let x = spline.nodes();
    let omega = spline.values();
    let n = x.len();
    let (j, _) = omega
        .iter()
        .enumerate()
        .fold((0, 0.0_f64), |(bj, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bj, bv) });
    if omega[j] == 0.0 {
        return Err(Error::Invalid("profile vanishes identically".into()));
    }
    let sign = omega[j].signum();
    // extremum of the spline between the neighbouring nodes
    let mut x_m = x[j];
    if j > 0 && j + 1 < n {
        let dl = spline.deriv(x[j - 1]) * sign;
        let dr = spline.deriv(x[j + 1]) * sign;
        let d0 = spline.deriv(x[j]) * sign;
        let bracket = if d0 > 0.0 && dr < 0.0 {
            Some((x[j], x[j + 1]))
        } else if dl > 0.0 && d0 < 0.0 {
            Some((x[j - 1], x[j]))
        } else {
            None
        };
        if let Some((lo, hi)) = bracket {
            x_m = bisect(lo, hi, |t| spline.deriv(t) * sign);
        }
    }
    let value = spline.eval(x_m);
    let half = 0.5 * value.abs();
    let g = |t: f64| spline.eval(t).abs() - half;
    let x1 = match (0..=j).rev().find(|&i| omega[i].abs() <= half) {
        Some(i) if x[i] < x_m => bisect(x[i], x_m.min(x[i + 1]).max(x[i]), g),
        _ => x[0],
    };
    let x2 = match (j..n).find(|&i| omega[i].abs() <= half) {
        Some(i) if x[i] > x_m => bisect(x_m.max(x[i - 1]).min(x[i]), x[i], g),
        _ => x[n - 1],
    };
    Ok(PeakSummary { x_m, value, x1, x2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentzian_peak() {
        let x: Vec<f64> = (0..400).map(|i| -4.0 + 0.02 * i as f64 + 0.003).collect();
        let f: Vec<f64> = x.iter().map(|t| -1.0 / (1.0 + (t - 0.3) * (t - 0.3))).collect();
        let p = peak_summary(&x, &f).unwrap();
        assert!((p.x_m - 0.3).abs() < 1e-6);
        assert!((p.value + 1.0).abs() < 1e-7);
        assert!((p.x1 - (-0.7)).abs() < 1e-5 && (p.x2 - 1.3).abs() < 1e-5);
    }
}

//! Power-law fits `v(t) ~ C (T - t)^eta` of blowup diagnostics.
//!
//! The crude estimate regresses `v / v'` on `t`: for an exact power law this
//! is the line `(t - T) / eta`. The refined estimate scans `eta` on a uniform
//! 101-point grid of half-width 0.1 around the crude value and keeps the one
//! for which `v^{1/eta}` is most nearly linear in `t` (largest `R^2`),
//! re-centering while the best point sits at an end of the grid. A final
//! golden-section search between the neighbours of the best grid point
//! removes the grid quantization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinary least-squares line `y = intercept + slope x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// `1 - SS_err / SS_tot`.
    pub r2: f64,
}

pub fn linear_regression(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    let n = x.len();
    if n != y.len() || n < 2 {
        return Err(Error::Fit("regression needs two or more matching samples".into()));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(p, q)| (p - mx) * (q - my)).sum();
    if !(sxx > 0.0) || !sxy.is_finite() {
        return Err(Error::Fit("singular regression".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    let ss_err: f64 = x.iter().zip(y).map(|(p, q)| (q - intercept - slope * p).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { (1.0 - ss_err / ss_tot).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LinearFit { slope, intercept, r2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// `1 / slope` of the `v / v'` regression.
    pub eta_crude: f64,
    pub eta: f64,
    /// `R^2` of `v^{1/eta}` against `t`.
    pub r2: f64,
    /// Time window of the samples used.
    pub window: [f64; 2],
    /// Root of the fitted line `v^{1/eta}(t)`.
    pub t_est: f64,
    /// Final grid interval of the refined search.
    pub search: [f64; 2],
}

fn r2_at(t: &[f64], v: &[f64], eta: f64) -> f64 {
    let y: Vec<f64> = v.iter().map(|x| x.powf(1.0 / eta)).collect();
    if y.iter().any(|q| !q.is_finite()) {
        return -1.0;
    }
    linear_regression(t, &y).map_or(-1.0, |f| f.r2)
}

/// Derivative at each interior sample of the parabola through it and its neighbours.
fn lagrange_derivative(t: &[f64], v: &[f64]) -> Vec<(f64, f64)> {
    (1..t.len() - 1)
        .map(|i| {
            let (h1, h2) = (t[i] - t[i - 1], t[i + 1] - t[i]);
            let d = -h2 / (h1 * (h1 + h2)) * v[i - 1] + (h2 - h1) / (h1 * h2) * v[i] + h1 / (h2 * (h1 + h2)) * v[i + 1];
            (t[i], d)
        })
        .collect()
}

/// Fit `v ~ C (T - t)^eta` on the samples with `t` in `window`.
pub fn fit_power_law(t: &[f64], v: &[f64], window: [f64; 2]) -> Result<FitResult> {
    if t.len() != v.len() {
        return Err(Error::Fit("t and v differ in length".into()));
    }
    let (ts, vs): (Vec<f64>, Vec<f64>) =
        t.iter().zip(v).filter(|(x, _)| **x >= window[0] && **x <= window[1]).map(|(x, y)| (*x, *y)).unzip();
    if ts.len() < 20 {
        return Err(Error::Fit(format!("{} samples in the window, need 20", ts.len())));
    }
    if ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Fit("t is not strictly increasing".into()));
    }
    if vs.iter().any(|x| !(*x > 0.0)) {
        return Err(Error::Fit("v must be positive".into()));
    }
    let up = vs.windows(2).all(|w| w[1] > w[0]);
    let down = vs.windows(2).all(|w| w[1] < w[0]);
    if !(up || down) {
        return Err(Error::Fit("v is not monotone in the window".into()));
    }

    let d = lagrange_derivative(&ts, &vs);
    let (tx, ratio): (Vec<f64>, Vec<f64>) = d.iter().zip(&vs[1..]).map(|((ti, di), vi)| (*ti, vi / di)).unzip();
    let crude = linear_regression(&tx, &ratio)?;
    let eta_crude = 1.0 / crude.slope;
    if !eta_crude.is_finite() || eta_crude == 0.0 {
        return Err(Error::Fit("crude exponent is degenerate".into()));
    }

    const HALF: f64 = 0.1;
    const POINTS: usize = 101;
    let step = 2.0 * HALF / (POINTS - 1) as f64;
    let mut center = eta_crude;
    let mut best = (center, -1.0);
    let mut search = [center - HALF, center + HALF];
    for _ in 0..200 {
        search = [center - HALF, center + HALF];
        best = (center, -1.0);
        let mut best_j = 0;
        for j in 0..POINTS {
            let eta = search[0] + step * j as f64;
            if eta == 0.0 {
                continue;
            }
            let r2 = r2_at(&ts, &vs, eta);
            if r2 > best.1 {
                best = (eta, r2);
                best_j = j;
            }
        }
        if best_j == 0 || best_j == POINTS - 1 {
            center = best.0;
        } else {
            break;
        }
    }

    // golden-section polish on the neighbouring grid cells
    let g = |eta: f64| -r2_at(&ts, &vs, eta);
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - phi * (hi - lo);
    let mut e = lo + phi * (hi - lo);
    let (mut gc, mut ge) = (g(c), g(e));
    for _ in 0..80 {
        if gc < ge {
            hi = e;
            e = c;
            ge = gc;
            c = hi - phi * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = e;
            gc = ge;
            e = lo + phi * (hi - lo);
            ge = g(e);
        }
    }
    let polished = 0.5 * (lo + hi);
    let eta = if -g(polished) >= best.1 { polished } else { best.0 };

    let y: Vec<f64> = vs.iter().map(|x| x.powf(1.0 / eta)).collect();
    let line = linear_regression(&ts, &y)?;
    Ok(FitResult {
        eta_crude,
        eta,
        r2: line.r2,
        window,
        t_est: -line.intercept / line.slope,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regression_on_a_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let f = linear_regression(&x, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-14 && (f.intercept - 1.0).abs() < 1e-14 && f.r2 == 1.0);
    }

    #[test]
    fn linear_series_gives_unit_exponent() {
        let t: Vec<f64> = (0..50).map(|i| i as f64 * 0.01).collect();
        let v: Vec<f64> = t.iter().map(|x| 2.0 - x).collect();
        let f = fit_power_law(&t, &v, [0.0, 1.0]).unwrap();
        assert!((f.eta - 1.0).abs() < 1e-6, "{f:?}");
        assert!((f.t_est - 2.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_short_windows() {
        let t: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(fit_power_law(&t, &t, [0.0, 100.0]).is_err());
    }
}

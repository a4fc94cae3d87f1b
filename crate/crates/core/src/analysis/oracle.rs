//! Exact solution of the rescaled `a = 0` problem with `(c_l, c_w) = (1/2, -1)`.
//!
//! For `a = 0` the complex function `h = F + i G`, `F = Omega`, `G = H(Omega)`
//! is the boundary value of an analytic function and obeys a Riccati equation
//! along the rescaled characteristics `X = x e^{t/2}`. Integrating it gives
//!
//! ```text
//! h(x, t) = h0(xi) / (e^t + (i/2)(e^t - 1) h0(xi)),   xi = x e^{-t/2}.
//! ```
//!
//! With `G0(0) = 2` the origin value is stationary and `G` tends to
//! `2 / (1 - x^2)` away from `x = 1`.

use serde::{Deserialize, Serialize};

/// Initial pair `(F0, G0 = H(F0))`.
#[derive(Debug, Clone, Copy)]
pub struct OracleA0 {
    pub f0: fn(f64) -> f64,
    pub g0: fn(f64) -> f64,
}

fn admissible_f0(x: f64) -> f64 {
    -16.0 / (3.0 * 3f64.sqrt()) * x.powi(3) / (1.0 + x * x / 3.0).powi(3)
}

fn admissible_g0(x: f64) -> f64 {
    let x2 = x * x;
    18.0 * (3.0 + 6.0 * x2 - x2 * x2) / (x2 + 3.0).powi(3)
}

impl OracleA0 {
    /// `F0 = -(16 / (3 sqrt 3)) x^3 / (1 + x^2/3)^3`, for which `G0(0) = 2` and `G0''(0) = 4`.
    pub fn admissible() -> Self {
        Self { f0: admissible_f0, g0: admissible_g0 }
    }

    /// `(F, G)` at `(x, t)`.
    pub fn eval(&self, x: f64, t: f64) -> OraclePoint {
        let xi = x * (-0.5 * t).exp();
        let (p, q) = ((self.f0)(xi), (self.g0)(xi));
        let et = t.exp();
        // denominator e^t + (i/2)(e^t - 1)(p + i q)
        let half = 0.5 * (et - 1.0);
        let dr = et - half * q;
        let di = half * p;
        let norm = dr * dr + di * di;
        OraclePoint { f: (p * dr + q * di) / norm, g: (q * dr - p * di) / norm }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub f: f64,
    pub g: f64,
}

/// Convenience wrapper for the admissible data.
pub fn oracle_a0(x: f64, t: f64) -> OraclePoint {
    OracleA0::admissible().eval(x, t)
}

/// Hilbert transform of `-4X/(1 + 4X^2)` restricted to `|X| <= m`.
///
/// The full-line transform is `2/(1 + 4X^2)`; cutting the odd `1/X` tail
/// lowers it by about `2/(pi m)` near the origin.
pub fn truncated_odd_lorentzian_hilbert(x: f64, m: f64) -> f64 {
    let d = 1.0 + 4.0 * x * x;
    let log_part = if x == 0.0 { 0.0 } else { 4.0 * x / d * ((m + x) / (m - x)).ln() };
    let atan_part = 4.0 / d * (0.5 / m).atan();
    2.0 / d - (log_part + atan_part) / std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_time_is_identity() {
        for x in [0.0, 0.3, 1.0, 4.0] {
            let p = oracle_a0(x, 0.0);
            assert!((p.f - admissible_f0(x)).abs() < 1e-15);
            assert!((p.g - admissible_g0(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn origin_is_stationary() {
        for t in [0.5, 3.0, 20.0] {
            assert!((oracle_a0(0.0, t).g - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn approaches_singular_limit() {
        assert!((oracle_a0(0.5, 20.0).g - 8.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn g0_is_the_hilbert_transform() {
        let x: Vec<f64> = (0..=4000).map(|i| 2000.0 * ((i as f64 / 4000.0) * 8.0).sinh() / 8f64.sinh() / 1.0).collect();
        let mut full: Vec<f64> = x.iter().skip(1).rev().map(|v| -v).collect();
        full.extend_from_slice(&x);
        let f: Vec<f64> = full.iter().map(|&t| admissible_f0(t)).collect();
        let h = crate::hilbert::hilbert_at(&full, &f, &[0.0, 0.7, 2.0]).unwrap();
        for (v, t) in h.iter().zip([0.0, 0.7, 2.0]) {
            assert!((v - admissible_g0(t)).abs() < 1e-5, "{t}: {v}");
        }
    }

    #[test]
    fn truncated_lorentzian_matches_quadrature() {
        let (x, m) = (0.7, 40.0);
        let f = |y: f64| -4.0 * y / (1.0 + 4.0 * y * y);
        // principal value via the odd symmetrization f(y) 2y / (x^2 - y^2), split at y = x
        let g = |y: f64| (f(y) * 2.0 * y - f(x) * 2.0 * x) / (x * x - y * y);
        let smooth = quadrature::integrate(g, 0.0, m, 1e-13).integral;
        let pv_rest = f(x) * 2.0 * x * ((m + x) / (m - x)).ln() / (2.0 * x);
        let direct = (smooth + pv_rest) / std::f64::consts::PI;
        assert!((truncated_odd_lorentzian_hilbert(x, m) - direct).abs() < 1e-10);
        assert!((truncated_odd_lorentzian_hilbert(x, 1e300) - 2.0 / (1.0 + 4.0 * x * x)).abs() < 1e-14);
    }
}

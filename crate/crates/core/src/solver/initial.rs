//! Initial data for the rescaling solver.

use serde::{Deserialize, Serialize};

/// Preset initial profiles `Omega_0`.
///
/// The `Case*` presets vanish to infinite order at the origin; the rational
/// preset vanishes to order `k` with `Omega_0 / X^k -> -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialData {
    /// Odd: `-(x/3)^{-3} exp(-3/|x|)`, peaked at `|x| = 1`.
    Case11,
    /// Odd: `-x^{-3} exp(-1/(|x|-1))` for `|x| > 1`, zero on `[-1, 1]`.
    Case12,
    /// Half-line version of [`InitialData::Case11`].
    Case21,
    /// Half-line version of [`InitialData::Case12`].
    Case22,
    /// Odd: `Omega_0 = X^k f_0` with `f_0 = -3/(3 + k X^{k+3})`.
    Rational,
    /// Odd: `-(16/(3 sqrt 3)) X^3/(1 + X^2/3)^3`, normalized so that
    /// `H(Omega_0)(0) = 2` and `H(Omega_0)''(0) = 4`.
    A0Admissible,
}

impl InitialData {
    /// Whether the data live on the half-line.
    pub fn is_half_line(&self) -> bool {
        matches!(self, InitialData::Case21 | InitialData::Case22)
    }

    /// `Omega_0 / X^k` at `x >= 0`, including the limit at the origin.
    pub fn f(&self, x: f64, k: u32) -> f64 {
        let kf = k as i32;
        match self {
            InitialData::Case11 | InitialData::Case21 => {
                if x <= 0.0 {
                    0.0
                } else {
                    -27.0 * x.powi(-3 - kf) * (-3.0 / x).exp()
                }
            }
            InitialData::Case12 | InitialData::Case22 => {
                if x <= 1.0 {
                    0.0
                } else {
                    -x.powi(-3 - kf) * (-1.0 / (x - 1.0)).exp()
                }
            }
            InitialData::Rational => -3.0 / (3.0 + k as f64 * x.powi(kf + 3)),
            InitialData::A0Admissible => {
                let amp = 16.0 / (3.0 * 3f64.sqrt());
                -amp * x.powi(3 - kf) / (1.0 + x * x / 3.0).powi(3)
            }
        }
    }

    /// `Omega_0(x)` for `x >= 0`.
    pub fn omega(&self, x: f64, k: u32) -> f64 {
        x.powi(k as i32) * self.f(x, k)
    }
}

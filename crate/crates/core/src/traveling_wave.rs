//! Traveling waves of the gCLM equation via the fixed-point map
//!
//! ```text
//! R_a(w)(x) = (1 - a T(w)(x) / r(w))_+^{1/a},   R_0(w) = exp(-T(w) / r(w)),
//! T(w)(x) = (1/pi) int_0^inf ln|(x^2 - y^2)/y^2| w(y) dy,
//! r(w)    = (1/pi) int_0^inf (w(0) - w(y)) / y^2 dy,
//! ```
//!
//! acting on even profiles sampled on `[0, M]`. `T` is the velocity `U`
//! (with `U(0) = 0`) of the even extension, so it reuses the dense spline
//! operator. Beyond `M` the profile is continued as a power law fitted to the
//! last two samples; its contributions to `T` and `r` are added in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{log_potential_at, DenseOperator, Folding};
use crate::spline::Spline;

const PI: f64 = std::f64::consts::PI;

/// Values below this are flushed to zero.
const FLUSH: f64 = 1e-300;

/// `eta_a = 1 / (2^{9/2} (4 + |a|)^3)`, the slope bound in the admissible set.
pub fn eta_a(a: f64) -> f64 {
    1.0 / (2f64.powf(4.5) * (4.0 + a.abs()).powi(3))
}

/// Nodes `x_j = scale * sinh(j * drho)` on `[0, m_w]`, with the last node at `m_w`.
pub fn wave_grid(m_w: f64, scale: f64, drho: f64) -> Result<Vec<f64>> {
    if !(m_w > 0.0 && scale > 0.0 && drho > 0.0) || !m_w.is_finite() {
        return Err(Error::Config(format!("bad wave grid ({m_w}, {scale}, {drho})")));
    }
    let rho_max = (m_w / scale).asinh();
    let n = (rho_max / drho).ceil() as usize;
    if n < 4 {
        return Err(Error::Config("wave grid needs at least 5 nodes".into()));
    }
    let h = rho_max / n as f64;
    let mut x: Vec<f64> = (0..=n).map(|j| scale * (j as f64 * h).sinh()).collect();
    x[n] = m_w;
    Ok(x)
}

/// An even profile sampled at `x_0 = 0 < x_1 < ... < x_n = M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveProfile {
    pub x: Vec<f64>,
    pub omega: Vec<f64>,
}

impl WaveProfile {
    pub fn new(x: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if x.len() != omega.len() || x.len() < 5 {
            return Err(Error::Grid("a wave profile needs matching x, omega of length >= 5".into()));
        }
        if x[0] != 0.0 || x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Grid("wave nodes must start at 0 and increase".into()));
        }
        if omega.iter().any(|v| !v.is_finite()) {
            return Err(Error::Grid("non-finite wave sample".into()));
        }
        Ok(Self { x, omega })
    }

    /// Sample `f` at the nodes.
    pub fn from_fn(x: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let omega = x.iter().map(|&t| f(t)).collect();
        Self::new(x, omega)
    }

    /// Natural spline through the even extension (slope exactly zero at 0 by symmetry).
    pub fn spline(&self) -> Result<Spline> {
        let (x, f) = self.mirrored();
        Spline::natural(&x, &f)
    }

    fn mirrored(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.x.len();
        let mut x = Vec::with_capacity(2 * n - 1);
        let mut f = Vec::with_capacity(2 * n - 1);
        for j in (1..n).rev() {
            x.push(-self.x[j]);
            f.push(self.omega[j]);
        }
        x.extend_from_slice(&self.x);
        f.extend_from_slice(&self.omega);
        (x, f)
    }

    /// Decay exponent `p` of the power-law continuation `w ~ w(M) (M/y)^p`,
    /// or `None` when the profile vanishes at `M` (no continuation).
    pub fn tail_power(&self) -> Option<f64> {
        let n = self.x.len();
        let (x0, x1) = (self.x[n - 2], self.x[n - 1]);
        let (w0, w1) = (self.omega[n - 2], self.omega[n - 1]);
        if !(w1 > 0.0 && w0 > w1) {
            return None;
        }
        Some(((w0 / w1).ln() / (x1 / x0).ln()).max(0.0))
    }
}

/// Contribution to `T(w)(x)` of the power-law continuation beyond `M`:
/// `-(w_M M / pi) sum_n (x/M)^{2n} / (n (2n + p - 1))`.
fn t_tail(x: f64, m: f64, w_m: f64, p: f64) -> f64 {
    let q = (x / m).powi(2);
    if q >= 1.0 {
        return f64::NAN;
    }
    let mut sum = 0.0;
    let mut qn = 1.0;
    for n in 1..=10_000 {
        qn *= q;
        let nf = n as f64;
        let term = qn / (nf * (2.0 * nf + p - 1.0));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    -w_m * m / PI * sum
}

/// `r(w)`: exact integration of the spline on the first interval,
/// adaptive quadrature on the others, closed-form power-law tail. A profile
/// that vanishes from some node `L` on is splined on `[0, L]` only, so the
/// kink at the support edge is not smoothed, and contributes `w(0)/L` beyond.
pub fn wave_speed_r(profile: &WaveProfile) -> Result<f64> {
    let edge = profile.omega.iter().rposition(|v| *v != 0.0).map_or(0, |j| j + 1);
    if edge >= 4 && edge + 1 < profile.x.len() {
        let support = WaveProfile::new(profile.x[..=edge].to_vec(), profile.omega[..=edge].to_vec())?;
        return wave_speed_r(&support);
    }
    let sp = profile.spline()?;
    let x = &profile.x;
    let w0 = profile.omega[0];
    let n = x.len();
    // first interval: w0 - s(y) = -(c2 y^2 + c3 y^3) because s'(0) = 0
    let (h, f0, f1) = (x[1], profile.omega[0], profile.omega[1]);
    let (m0, m1) = (0.0, sp.deriv(x[1]));
    let c2 = (3.0 * (f1 - f0) / h - 2.0 * m0 - m1) / h;
    let c3 = (m0 + m1 - 2.0 * (f1 - f0) / h) / (h * h);
    let mut total = -(c2 * h + 0.5 * c3 * h * h);
    for j in 1..n - 1 {
        let (lo, hi) = (x[j], x[j + 1]);
        let tol = 1e-15 * (hi - lo) / (lo * lo);
        total += quadrature::integrate(|y| (w0 - sp.eval(y)) / (y * y), lo, hi, tol).integral;
    }
    let m = x[n - 1];
    let w_m = profile.omega[n - 1];
    total += match profile.tail_power() {
        Some(p) => (w0 - w_m / (1.0 + p)) / m,
        None => (w0 - w_m) / m,
    };
    Ok(total / PI)
}

/// `T(w)` at arbitrary points `0 <= x < M`, by direct kernel assembly.
pub fn biot_savart_t(profile: &WaveProfile, points: &[f64]) -> Result<Vec<f64>> {
    let m = *profile.x.last().unwrap();
    if points.iter().any(|&t| !(t >= 0.0 && t < m)) {
        return Err(Error::Invalid(format!("T is evaluated on [0, {m})")));
    }
    let (x, f) = profile.mirrored();
    let mut pts = points.to_vec();
    pts.push(0.0);
    let mut l = log_potential_at(&x, &f, &pts)?;
    let l0 = l.pop().unwrap();
    let w_m = *profile.omega.last().unwrap();
    let tail = profile.tail_power();
    Ok(l.iter()
        .zip(points)
        .map(|(v, &t)| v - l0 + tail.map_or(0.0, |p| t_tail(t, m, w_m, p)))
        .collect())
}

/// Fixed-grid operators for repeated application of `R_a`.
pub struct WaveOperator {
    pub a: f64,
    x: Vec<f64>,
    op: DenseOperator,
}

impl WaveOperator {
    pub fn new(a: f64, x: &[f64]) -> Result<Self> {
        if !(a < 1.0) || !a.is_finite() {
            return Err(Error::Config(format!("traveling waves need a < 1, got {a}")));
        }
        let op = DenseOperator::build(x, Folding::Even, &[])?;
        Ok(Self { a, x: x.to_vec(), op })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    /// `T(w)` at the nodes. The value at the last node omits the tail
    /// correction, whose series diverges there.
    pub fn t(&self, profile: &WaveProfile) -> Vec<f64> {
        let mut t = self.op.velocity(&profile.omega);
        if let Some(p) = profile.tail_power() {
            let n = self.x.len();
            let m = self.x[n - 1];
            let w_m = profile.omega[n - 1];
            for j in 0..n - 1 {
                t[j] += t_tail(self.x[j], m, w_m, p);
            }
        }
        t
    }

    /// `R_a(w)` and `r(w)`.
    pub fn apply(&self, profile: &WaveProfile) -> Result<(WaveProfile, f64)> {
        let r = wave_speed_r(profile)?;
        if !(r > 0.0) {
            return Err(Error::Invalid(format!("wave speed r = {r} is not positive")));
        }
        let a = self.a;
        let omega = self
            .t(profile)
            .iter()
            .map(|&t| {
                let v = if a == 0.0 {
                    (-t / r).exp()
                } else {
                    (1.0 - a * t / r).max(0.0).powf(1.0 / a)
                };
                if v < FLUSH {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        Ok((WaveProfile::new(self.x.clone(), omega)?, r))
    }
}

/// `R_a(w)` on the profile's own grid.
pub fn apply_r_a(a: f64, profile: &WaveProfile) -> Result<WaveProfile> {
    Ok(WaveOperator::new(a, &profile.x)?.apply(profile)?.0)
}

/// Far-field behaviour of a converged wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TailClass {
    /// Algebraic decay `w ~ x^exponent`.
    PowerLaw { exponent: f64, window: [f64; 2] },
    /// `w <= threshold` from `radius` on.
    CompactSupport { radius: f64, threshold: f64 },
}

/// Least-squares slope of `ln w` against `ln x` over the nodes in `window`.
pub fn tail_exponent(x: &[f64], omega: &[f64], window: [f64; 2]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(omega)
        .filter(|(t, _)| **t >= window[0] && **t <= window[1])
        .map(|(t, w)| (*t, *w))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Fit(format!("fewer than 3 samples in {window:?}")));
    }
    if pts.iter().any(|(_, w)| !(*w > 0.0)) {
        return Err(Error::Fit("nonpositive value in the tail window".into()));
    }
    let lx: Vec<f64> = pts.iter().map(|(t, _)| t.ln()).collect();
    let ly: Vec<f64> = pts.iter().map(|(_, w)| w.ln()).collect();
    Ok(crate::analysis::fit::linear_regression(&lx, &ly)?.slope)
}

/// Smallest node beyond which the profile stays at or below `threshold`.
pub fn support_radius(x: &[f64], omega: &[f64], threshold: f64) -> Option<f64> {
    let last_above = omega.iter().rposition(|&w| w > threshold)?;
    (last_above + 1 < x.len()).then(|| x[last_above + 1])
}

/// Each condition of the admissible set with its margin (nonnegative when met).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    /// `-|w(0) - 1|`.
    pub origin: f64,
    /// `min (w - (1 - x^2)_+)`.
    pub lower_bound: f64,
    /// `min (1 - w)`.
    pub upper_bound: f64,
    /// `min (w_j - w_{j+1})`.
    pub monotone: f64,
    /// Smallest second divided difference of `w(sqrt s)` in `s`, relative to the largest.
    pub convexity: f64,
    /// `-eta_a - w'(1/2)`.
    pub slope: f64,
}

impl Membership {
    /// Whether every margin clears `-tol`.
    pub fn passes(&self, tol: f64) -> bool {
        [self.origin, self.lower_bound, self.upper_bound, self.monotone, self.convexity, self.slope]
            .iter()
            .all(|&m| m >= -tol)
    }
}

/// Check the conditions defining the admissible set for parameter `a`.
pub fn check_membership(profile: &WaveProfile, a: f64) -> Result<Membership> {
    let x = &profile.x;
    let w = &profile.omega;
    let n = x.len();
    let lower_bound = (0..n).map(|j| w[j] - (1.0 - x[j] * x[j]).max(0.0)).fold(f64::INFINITY, f64::min);
    let upper_bound = w.iter().map(|v| 1.0 - v).fold(f64::INFINITY, f64::min);
    let monotone = w.windows(2).map(|p| p[0] - p[1]).fold(f64::INFINITY, f64::min);
    let s: Vec<f64> = x.iter().map(|t| t * t).collect();
    let dd: Vec<f64> = (1..n - 1)
        .map(|j| {
            let d1 = (w[j] - w[j - 1]) / (s[j] - s[j - 1]);
            let d2 = (w[j + 1] - w[j]) / (s[j + 1] - s[j]);
            (d2 - d1) / (s[j + 1] - s[j - 1])
        })
        .collect();
    let scale = dd.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let convexity = dd.iter().fold(f64::INFINITY, |m, v| m.min(*v)) / scale;
    let slope = -eta_a(a) - profile.spline()?.deriv(0.5);
    Ok(Membership { origin: -(w[0] - 1.0).abs(), lower_bound, upper_bound, monotone, convexity, slope })
}

/// Iteration controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSettings {
    /// Outer end of the grid; `None` picks `1e6` for `a < 0` and `1e2` otherwise.
    pub m_w: Option<f64>,
    pub scale: f64,
    pub drho: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Under-relaxation factor in `(0, 1]`.
    pub relaxation: f64,
    /// Window for the power-law fit; `None` picks `[1e2, 1e4]` for `a < 0` and
    /// `[10, 50]` for `a = 0`.
    pub tail_window: Option<[f64; 2]>,
    /// Threshold for compact-support detection.
    pub support_threshold: f64,
}

impl Default for WaveSettings {
    fn default() -> Self {
        Self {
            m_w: None,
            scale: 1.0,
            drho: 0.005,
            tol: 1e-8,
            max_iter: 10_000,
            relaxation: 1.0,
            tail_window: None,
            support_threshold: 1e-10,
        }
    }
}

impl WaveSettings {
    pub fn grid(&self, a: f64) -> Result<Vec<f64>> {
        let m = self.m_w.unwrap_or(if a < 0.0 { 1e6 } else { 1e2 });
        wave_grid(m, self.scale, self.drho)
    }
}

/// Outcome of the fixed-point iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveResult {
    pub a: f64,
    pub profile: WaveProfile,
    /// Speed `r` of the final iterate.
    pub r: f64,
    pub iterations: usize,
    /// Sup norm of the last increment.
    pub increment: f64,
    pub converged: bool,
    pub tail: Option<TailClass>,
}

/// Classify the far field of a profile for parameter `a`.
pub fn classify_tail(profile: &WaveProfile, a: f64, settings: &WaveSettings) -> Option<TailClass> {
    if a > 0.0 {
        let radius = support_radius(&profile.x, &profile.omega, settings.support_threshold)?;
        return Some(TailClass::CompactSupport { radius, threshold: settings.support_threshold });
    }
    let m = *profile.x.last().unwrap();
    let window = settings.tail_window.unwrap_or(if a < 0.0 { [1e2, 1e4] } else { [10.0, 0.5 * m] });
    let exponent = tail_exponent(&profile.x, &profile.omega, window).ok()?;
    Some(TailClass::PowerLaw { exponent, window })
}

/// Picard iteration `w <- (1 - theta) w + theta R_a(w)` from `start`, stopping
/// once the sup increment drops below `settings.tol`. `observe` sees every
/// iterate with its speed.
pub fn iterate_from(
    op: &WaveOperator,
    start: WaveProfile,
    settings: &WaveSettings,
    mut observe: impl FnMut(usize, &WaveProfile, f64),
) -> Result<WaveResult> {
    if !(settings.relaxation > 0.0 && settings.relaxation <= 1.0) {
        return Err(Error::Config("relaxation must lie in (0, 1]".into()));
    }
    let theta = settings.relaxation;
    let mut w = start;
    let mut r = f64::NAN;
    let mut increment = f64::INFINITY;
    let mut iterations = 0;
    while iterations < settings.max_iter {
        let (next, speed) = op.apply(&w)?;
        r = speed;
        let mixed: Vec<f64> = w.omega.iter().zip(&next.omega).map(|(o, n)| (1.0 - theta) * o + theta * n).collect();
        increment = mixed.iter().zip(&w.omega).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        w = WaveProfile::new(w.x, mixed)?;
        iterations += 1;
        observe(iterations, &w, r);
        if increment < settings.tol {
            break;
        }
    }
    let converged = increment < settings.tol;
    if converged {
        r = wave_speed_r(&w)?;
    }
    let tail = classify_tail(&w, op.a, settings);
    Ok(WaveResult { a: op.a, profile: w, r, iterations, increment, converged, tail })
}

/// Fixed point of `R_a` starting from `1/(1 + x^2)`.
pub fn solve_fixed_point(a: f64, settings: &WaveSettings) -> Result<WaveResult> {
    let x = settings.grid(a)?;
    let op = WaveOperator::new(a, &x)?;
    let start = WaveProfile::from_fn(x, |t| 1.0 / (1.0 + t * t))?;
    iterate_from(&op, start, settings, |_, _, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_value() {
        assert!((eta_a(0.0) - 1.0 / (22.627416997969522 * 64.0)).abs() < 1e-15);
    }

    #[test]
    fn tail_series_matches_quadrature() {
        // T contribution of w = (M/y)^p on y > M
        let (m, p, x) = (50.0, 1.5, 20.0);
        let direct = quadrature::integrate(
            |u: f64| {
                let y = m / u;
                (1.0 - x * x / (y * y)).abs().ln() * (m / y).powf(p) * m / (u * u)
            },
            1e-12,
            1.0,
            1e-13,
        )
        .integral
            / PI;
        assert!((t_tail(x, m, 1.0, p) - direct).abs() < 1e-10, "{} {}", t_tail(x, m, 1.0, p), direct);
    }

    #[test]
    fn grid_ends() {
        let x = wave_grid(100.0, 1.0, 0.01).unwrap();
        assert_eq!(x[0], 0.0);
        assert_eq!(*x.last().unwrap(), 100.0);
    }
}

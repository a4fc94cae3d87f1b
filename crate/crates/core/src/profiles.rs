//! Closed-form self-similar profiles, singular limits and the `a = 0`
//! traveling wave.
//!
//! Every profile solves the steady equation
//!
//! ```text
//! (c_l X + a U) Omega_X = (c_w + H(Omega)) Omega,   U_X = H(Omega), U(0) = 0
//! ```
//!
//! for the scaling pair returned by [`steady_triple`]. Hilbert transforms and
//! velocities are exact except for [`ProfileKind::CAlpha`], whose velocity is
//! integrated numerically.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The catalogue of explicit profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProfileKind {
    /// `a = 0`: `Omega = -4X/(1+4X^2)`.
    Clm0,
    /// `a = 1/2`: `Omega = -sqrt(3/8) X/(3/8+X^2)^2`.
    DeGregorioHalf,
    /// Any `a`: `Omega = -X/sqrt(1-X^2)` on `|X| < 1`.
    Castro { a: f64 },
    /// `a = 0`, `0 < alpha <= 1`: the `C^alpha` family.
    CAlpha { alpha: f64 },
    /// `a < 0`: the singular half-line profile `-sin(pi mu)/(X-1)^mu` on `X > 1`.
    SingularHalfLine { a: f64 },
    /// `a -> -inf` odd limit: a pair of point vortices at `X = +-1`.
    SingularOddLimit,
    /// `a -> -inf` half-line limit: a point vortex at `X = 1`.
    SingularHalfLineLimit,
    /// `a = 0` traveling wave `1/(1+x^2)`.
    TravelingA0,
}

/// Values of a profile at one point. `omega` is `0` away from the support of a
/// point-vortex limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileValue {
    pub omega: f64,
    pub omega_x: f64,
    pub hilbert: f64,
    pub velocity: f64,
}

/// A profile together with the scaling pair for which it is steady.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyTriple {
    pub kind: ProfileKind,
    pub a: f64,
    pub c_l: f64,
    pub c_omega: f64,
}

impl SteadyTriple {
    pub fn gamma(&self) -> f64 {
        -self.c_l / self.c_omega
    }
}

impl ProfileKind {
    /// Check parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProfileKind::CAlpha { alpha } if !(alpha > 0.0 && alpha <= 1.0) => {
                Err(Error::Invalid(format!("C^alpha profile needs 0 < alpha <= 1, got {alpha}")))
            }
            ProfileKind::SingularHalfLine { a } if !(a < 0.0) || !a.is_finite() => {
                Err(Error::Invalid(format!("singular half-line profile needs a < 0, got {a}")))
            }
            ProfileKind::Castro { a } if !a.is_finite() => Err(Error::Invalid("a must be finite".into())),
            _ => Ok(()),
        }
    }

    /// The exponent `gamma = -c_l / c_omega` (the speed for the traveling wave).
    pub fn gamma(&self) -> f64 {
        match *self {
            ProfileKind::Clm0 => 1.0,
            ProfileKind::DeGregorioHalf => 1.0 / 3.0,
            ProfileKind::Castro { a } => -a,
            ProfileKind::CAlpha { alpha } => 1.0 / alpha,
            ProfileKind::SingularHalfLine { a } => 1.0 - a,
            ProfileKind::SingularOddLimit => 0.5,
            ProfileKind::SingularHalfLineLimit => 1.0,
            ProfileKind::TravelingA0 => 0.5,
        }
    }
}

/// The steady scaling pair of a profile. Fails for the traveling wave, which
/// is not a self-similar profile.
pub fn steady_triple(kind: ProfileKind) -> Result<SteadyTriple> {
    kind.validate()?;
    let (a, c_l, c_omega) = match kind {
        ProfileKind::Clm0 => (0.0, 1.0, -1.0),
        ProfileKind::DeGregorioHalf => (0.5, 1.0 / 3.0, -1.0),
        ProfileKind::Castro { a } => (a, -a, -1.0),
        ProfileKind::CAlpha { alpha } => (0.0, 0.5 / alpha, -0.5),
        ProfileKind::SingularHalfLine { a } => (a, 1.0 - a, -1.0),
        ProfileKind::SingularOddLimit => (f64::NEG_INFINITY, 0.5, -1.0),
        ProfileKind::SingularHalfLineLimit => (f64::NEG_INFINITY, 1.0, -1.0),
        ProfileKind::TravelingA0 => {
            return Err(Error::Invalid("the traveling wave has no rescaling pair".into()))
        }
    };
    Ok(SteadyTriple { kind, a, c_l, c_omega })
}

fn c_alpha_parts(alpha: f64, x: f64) -> (f64, f64, f64) {
    let theta = alpha * PI / 2.0;
    let p = x.abs().powf(alpha);
    let den = 1.0 + 2.0 * theta.cos() * p + p * p;
    let omega = -theta.sin() * x.signum() * p / den;
    let hilbert = (1.0 + theta.cos() * p) / den;
    let omega_x = if x == 0.0 {
        -theta.sin()
    } else {
        -theta.sin() * alpha * p * (1.0 - p * p) / (x.abs() * den * den)
    };
    (omega, omega_x, hilbert)
}

/// Evaluate a profile at `x`. Singular points are reported as errors.
pub fn eval_profile(kind: ProfileKind, x: f64) -> Result<ProfileValue> {
    kind.validate()?;
    if !x.is_finite() {
        return Err(Error::Singular("profile", x));
    }
    let v = match kind {
        ProfileKind::Clm0 => {
            let d = 1.0 + 4.0 * x * x;
            ProfileValue {
                omega: -4.0 * x / d,
                omega_x: (16.0 * x * x - 4.0) / (d * d),
                hilbert: 2.0 / d,
                velocity: (2.0 * x).atan(),
            }
        }
        ProfileKind::DeGregorioHalf => {
            let b = 3.0 / 8.0;
            let d = b + x * x;
            ProfileValue {
                omega: -b.sqrt() * x / (d * d),
                omega_x: -b.sqrt() * (b - 3.0 * x * x) / (d * d * d),
                hilbert: (b - x * x) / (d * d),
                velocity: x / d,
            }
        }
        ProfileKind::Castro { .. } => {
            if x.abs() == 1.0 {
                return Err(Error::Singular("Castro profile", x));
            }
            if x.abs() < 1.0 {
                let q = 1.0 - x * x;
                ProfileValue { omega: -x / q.sqrt(), omega_x: -q.powf(-1.5), hilbert: 1.0, velocity: x }
            } else {
                let r = (x * x - 1.0).sqrt();
                ProfileValue {
                    omega: 0.0,
                    omega_x: 0.0,
                    hilbert: 1.0 - x.abs() / r,
                    velocity: x - x.signum() * r,
                }
            }
        }
        ProfileKind::CAlpha { alpha } => {
            if x == 0.0 && alpha < 1.0 {
                return Err(Error::Singular("C^alpha profile derivative", x));
            }
            let (omega, omega_x, hilbert) = c_alpha_parts(alpha, x);
            let out = quadrature::integrate(|y| c_alpha_parts(alpha, y).2, 0.0, x.abs(), 1e-13);
            ProfileValue { omega, omega_x, hilbert, velocity: x.signum() * out.integral }
        }
        ProfileKind::SingularHalfLine { a } => {
            if x == 1.0 {
                return Err(Error::Singular("singular half-line profile", x));
            }
            let mu = 1.0 / (1.0 - a);
            let d = (x - 1.0).abs();
            let dm = d.powf(-mu);
            let (omega, omega_x, hilbert) = if x > 1.0 {
                let sm = (PI * mu).sin();
                (-sm * dm, mu * sm * dm / d, (PI * mu).cos() * dm)
            } else {
                (0.0, 0.0, dm)
            };
            let velocity = 1.0 / (1.0 - mu) + (x - 1.0) / (1.0 - mu) * hilbert;
            ProfileValue { omega, omega_x, hilbert, velocity }
        }
        ProfileKind::SingularOddLimit => {
            if x.abs() == 1.0 {
                return Err(Error::Singular("odd point-vortex limit", x));
            }
            ProfileValue {
                omega: 0.0,
                omega_x: 0.0,
                hilbert: 2.0 / (1.0 - x * x),
                velocity: ((1.0 + x) / (1.0 - x)).abs().ln(),
            }
        }
        ProfileKind::SingularHalfLineLimit => {
            if x == 1.0 {
                return Err(Error::Singular("half-line point-vortex limit", x));
            }
            ProfileValue {
                omega: 0.0,
                omega_x: 0.0,
                hilbert: 2.0 / (1.0 - x),
                velocity: -2.0 * (1.0 - x).abs().ln(),
            }
        }
        ProfileKind::TravelingA0 => {
            let d = 1.0 + x * x;
            ProfileValue {
                omega: 1.0 / d,
                omega_x: -2.0 * x / (d * d),
                hilbert: x / d,
                velocity: 0.5 * d.ln(),
            }
        }
    };
    Ok(v)
}

/// Pointwise residual `(c_l X + a U) Omega_X - (c_w + H) Omega` of a steady triple.
pub fn steady_residual(triple: &SteadyTriple, points: &[f64]) -> Result<Vec<f64>> {
    points
        .iter()
        .map(|&x| {
            let p = eval_profile(triple.kind, x)?;
            let advect = if triple.a.is_finite() {
                triple.c_l * x + triple.a * p.velocity
            } else {
                // point-vortex limits carry no vorticity away from the vortices
                0.0
            };
            Ok(advect * p.omega_x - (triple.c_omega + p.hilbert) * p.omega)
        })
        .collect()
}

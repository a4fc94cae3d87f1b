//! Dynamic rescaling solver.
//!
//! Evolves `f = Omega / X^k` under
//!
//! ```text
//! f_tau + (c_l X + a U) f_X = (c_w + U_X - k (c_l + a U/X)) f,   U_X = H(Omega), U(0) = 0,
//! ```
//!
//! on a graded half-line mesh, with `Omega` either odd or supported on `X >= 0`.
//! The scaling rates `(c_l, c_w)` are fixed at every Runge-Kutta stage by
//! requiring two linear functionals of `Omega` to be stationary. Because the
//! stage right-hand sides annihilate those functionals, the Runge-Kutta update
//! preserves them up to roundoff; a cheap renormalization after each step (and
//! after every remesh) removes what is left.

pub mod history;
pub mod initial;
pub mod ssprk;
pub mod weno;

use serde::{Deserialize, Serialize};

use crate::analysis::peak::{peak_summary_of, PeakSummary};
use crate::error::{Error, Result};
use crate::hilbert::{DenseOperator, Folding};
use crate::mesh::{generate_mesh, half_line_pad, remesh, should_remesh, symmetric_spline, AdaptiveMesh, MeshSpec, Parity};
use crate::spline::{SlopeSystem, Spline};

pub use history::{reconstruct_physical, HistoryRow, PhysicalSeries, ScalingHistory};
pub use initial::InitialData;

/// Symmetry class of the evolved vorticity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// `Omega(-X) = -Omega(X)`.
    Odd,
    /// `Omega = 0` for `X < 0`.
    HalfLine,
}

/// How `(c_l, c_w)` are determined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum NormalizationScheme {
    /// `f(0) = -1` and `Omega_X(pin) = 0`.
    DegenerateSlope,
    /// `Omega_X(pin) = 0` and `H(Omega)(0)` frozen at its initial value.
    MinPin,
    /// `c_l + a U(pin) = 0` and `H(Omega)(0)` frozen at its initial value.
    SupportPin,
    /// `(c_l, c_w) = (1/2, -1)`.
    ConstantA0Odd,
    /// `(c_l, c_w) = (1, -1)`.
    ConstantA0Half,
    /// Any fixed pair.
    Fixed { c_l: f64, c_omega: f64 },
}

impl NormalizationScheme {
    fn constants(&self) -> Option<(f64, f64)> {
        match *self {
            NormalizationScheme::ConstantA0Odd => Some((0.5, -1.0)),
            NormalizationScheme::ConstantA0Half => Some((1.0, -1.0)),
            NormalizationScheme::Fixed { c_l, c_omega } => Some((c_l, c_omega)),
            _ => None,
        }
    }
}

/// Equation and normalization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub a: f64,
    /// Vanishing order used in `f = Omega / X^k`.
    pub k: u32,
    pub symmetry: Symmetry,
    pub scheme: NormalizationScheme,
    /// Point where the pinned normalizations act.
    pub pin: f64,
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() {
            return Err(Error::Config("a must be finite".into()));
        }
        if self.k > 15 {
            return Err(Error::Config(format!("vanishing order k = {} is too large", self.k)));
        }
        if !(self.pin > 0.0) {
            return Err(Error::Config("the pin point must be positive".into()));
        }
        if self.scheme == NormalizationScheme::DegenerateSlope && self.symmetry != Symmetry::Odd {
            return Err(Error::Config("the degenerate-slope normalization needs odd symmetry".into()));
        }
        Ok(())
    }

    /// Parity of `f` under `X -> -X` (for the odd class), or zero continuation.
    fn f_parity(&self) -> Parity {
        match self.symmetry {
            Symmetry::HalfLine => Parity::Zero,
            Symmetry::Odd if self.k % 2 == 1 => Parity::Even,
            Symmetry::Odd => Parity::Odd,
        }
    }

    fn omega_parity(&self) -> Parity {
        match self.symmetry {
            Symmetry::HalfLine => Parity::Zero,
            Symmetry::Odd => Parity::Odd,
        }
    }
}

/// Solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub cfl: f64,
    /// Convergence threshold on the residual.
    pub tol: f64,
    pub tau_max: f64,
    pub max_steps: usize,
    pub dtau_max: f64,
    /// Regenerate the mesh when the peak drifts or narrows.
    pub adaptive: bool,
    /// Half-width of the window around `pin` excluded from the residual when `a <= 0`.
    pub exclusion: f64,
    /// Record every n-th step in the history (the first and last are always kept).
    pub record_every: usize,
    /// Times at which full profiles are captured.
    pub snapshot_taus: Vec<f64>,
    /// Extent and spacing of the negative pad for half-line problems.
    pub pad_extent: f64,
    pub pad_spacing: f64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            cfl: 0.4,
            tol: 1e-8,
            tau_max: 1e4,
            max_steps: 10_000_000,
            dtau_max: 0.5,
            adaptive: false,
            exclusion: 0.1,
            record_every: 1,
            snapshot_taus: Vec::new(),
            pad_extent: 10.0,
            pad_spacing: 0.5,
        }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<()> {
        let ok = self.cfl > 0.0
            && self.cfl.is_finite()
            && self.tol > 0.0
            && self.tau_max > 0.0
            && self.dtau_max > 0.0
            && self.record_every >= 1
            && self.exclusion >= 0.0
            && self.pad_extent > 0.0
            && self.pad_spacing > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid run settings: {self:?}")))
        }
    }
}

/// The evolving profile.
#[derive(Debug, Clone)]
pub struct RescalingState {
    pub tau: f64,
    pub mesh: AdaptiveMesh,
    /// `Omega / X^k` at the mesh nodes.
    pub f: Vec<f64>,
    pub c_l: f64,
    pub c_omega: f64,
    /// Target value of `H(Omega)(0)` for the pinned normalizations.
    pub hilbert_target: f64,
}

/// A full profile at one time level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub tau: f64,
    pub x: Vec<f64>,
    pub omega: Vec<f64>,
    pub f: Vec<f64>,
    pub hilbert: Vec<f64>,
    pub velocity: Vec<f64>,
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RunStatus {
    Converged,
    NotConverged,
    Diverged { reason: String },
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub state: RescalingState,
    pub history: ScalingHistory,
    pub status: RunStatus,
    pub snapshots: Vec<Snapshot>,
    /// Profile at the final state.
    pub last: Snapshot,
    pub steps: usize,
    pub remeshes: usize,
}

/// Side products of one right-hand-side evaluation.
#[derive(Debug, Clone)]
pub struct StageEval {
    pub c_l: f64,
    pub c_omega: f64,
    pub hilbert: Vec<f64>,
    pub velocity: Vec<f64>,
}

/// Mesh-dependent operators for a model.
pub struct Solver {
    pub model: Model,
    mesh: AdaptiveMesh,
    op: DenseOperator,
    xk: Vec<f64>,
    /// `Omega_X(pin) = w . (X^k f)`, stored premultiplied by `X^k`.
    pin_slope: Vec<f64>,
    /// `U(pin) = w . U`.
    pin_value: Vec<f64>,
    /// `H(Omega)(0)` row premultiplied by `X^k`.
    origin_hilbert: Vec<f64>,
}

impl Solver {
    pub fn new(model: Model, mesh: &AdaptiveMesh, settings: &RunSettings) -> Result<Self> {
        model.validate()?;
        let nodes = &mesh.nodes;
        let (folding, pad) = match model.symmetry {
            Symmetry::Odd => (Folding::Odd, Vec::new()),
            Symmetry::HalfLine => (Folding::HalfLinePad, half_line_pad(settings.pad_extent, settings.pad_spacing)),
        };
        let op = DenseOperator::build(nodes, folding, &pad)?;
        let xk: Vec<f64> = nodes.iter().map(|x| x.powi(model.k as i32)).collect();
        let sys = SlopeSystem::new(nodes)?;
        let pin_slope: Vec<f64> =
            sys.functional(nodes, model.pin, true).iter().zip(&xk).map(|(w, p)| w * p).collect();
        let pin_value = sys.functional(nodes, model.pin, false);
        let origin_hilbert = op.hilbert_row(0).iter().zip(&xk).map(|(w, p)| w * p).collect();
        Ok(Self { model, mesh: mesh.clone(), op, xk, pin_slope, pin_value, origin_hilbert })
    }

    pub fn mesh(&self) -> &AdaptiveMesh {
        &self.mesh
    }

    pub fn operator(&self) -> &DenseOperator {
        &self.op
    }

    /// `Omega = X^k f`.
    pub fn omega(&self, f: &[f64]) -> Vec<f64> {
        f.iter().zip(&self.xk).map(|(a, b)| a * b).collect()
    }

    /// `H(Omega)(0)` for the profile `f`.
    pub fn hilbert_at_origin(&self, f: &[f64]) -> f64 {
        dot(&self.origin_hilbert, f)
    }

    /// Fresh state from initial data.
    pub fn initial_state(&self, data: InitialData) -> Result<RescalingState> {
        let f: Vec<f64> = self.mesh.nodes.iter().map(|&x| data.f(x, self.model.k)).collect();
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("initial data are not finite on the mesh".into()));
        }
        let mut state = RescalingState {
            tau: 0.0,
            mesh: self.mesh.clone(),
            hilbert_target: self.hilbert_at_origin(&f),
            f,
            c_l: 0.0,
            c_omega: 0.0,
        };
        let (c_l, c_omega) = self.compute_scaling_factors(&state.f, 0.0)?;
        state.c_l = c_l;
        state.c_omega = c_omega;
        Ok(state)
    }

    /// `(c_l, c_w)` for the profile `f`; `c_l_guess` seeds the upwind direction.
    pub fn compute_scaling_factors(&self, f: &[f64], c_l_guess: f64) -> Result<(f64, f64)> {
        let mut scratch = vec![0.0; f.len()];
        let ev = self.evaluate(f, c_l_guess, &mut scratch)?;
        Ok((ev.c_l, ev.c_omega))
    }

    /// `f_tau` for the profile `f`, written to `out`.
    pub fn evaluate(&self, f: &[f64], c_l_guess: f64, out: &mut [f64]) -> Result<StageEval> {
        let n = f.len();
        let a = self.model.a;
        let k = self.model.k as f64;
        let x = &self.mesh.nodes;
        let omega = self.omega(f);
        let hilbert = self.op.hilbert(&omega);
        let velocity = self.op.velocity(&omega);

        let ghosts = match self.model.f_parity() {
            Parity::Zero => [0.0; 3],
            Parity::Even => [f[1], f[2], f[3]],
            Parity::Odd => [-f[1], -f[2], -f[3]],
        };
        let mut dm = vec![0.0; n];
        let mut dp = vec![0.0; n];
        weno::weno5_derivatives(f, self.mesh.drho, Some(ghosts), Some(weno::geometric_tail(f)), &mut dm, &mut dp);
        for j in 0..n {
            dm[j] /= self.mesh.dx_drho[j];
            dp[j] /= self.mesh.dx_drho[j];
        }
        let u_over_x: Vec<f64> =
            (0..n).map(|j| if x[j] == 0.0 { hilbert[j] } else { velocity[j] / x[j] }).collect();

        let mut f0 = vec![0.0; n];
        let mut fl = vec![0.0; n];
        let mut wind_c = c_l_guess;
        let mut c = (0.0, 0.0);
        for _ in 0..6 {
            for j in 0..n {
                let fx = if wind_c * x[j] + a * velocity[j] > 0.0 { dm[j] } else { dp[j] };
                f0[j] = -a * velocity[j] * fx + (hilbert[j] - k * a * u_over_x[j]) * f[j];
                fl[j] = -x[j] * fx - k * f[j];
            }
            c = self.solve_rates(&f0, &fl, f, &velocity)?;
            let same = (0..n).all(|j| {
                (wind_c * x[j] + a * velocity[j] > 0.0) == (c.0 * x[j] + a * velocity[j] > 0.0)
            });
            if same {
                break;
            }
            wind_c = c.0;
        }
        let (c_l, c_omega) = c;
        for j in 0..n {
            out[j] = f0[j] + c_l * fl[j] + c_omega * f[j];
        }
        Ok(StageEval { c_l, c_omega, hilbert, velocity })
    }

    /// Solve for `(c_l, c_w)` given the split `f_tau = f0 + c_l fl + c_w f`.
    fn solve_rates(&self, f0: &[f64], fl: &[f64], f: &[f64], velocity: &[f64]) -> Result<(f64, f64)> {
        let two = |l1: &dyn Fn(&[f64]) -> f64, l2: &dyn Fn(&[f64]) -> f64| -> Result<(f64, f64)> {
            let (a11, a12, b1) = (l1(fl), l1(f), -l1(f0));
            let (a21, a22, b2) = (l2(fl), l2(f), -l2(f0));
            let det = a11 * a22 - a12 * a21;
            let scale = (a11.abs() + a12.abs()) * (a21.abs() + a22.abs());
            if !(det.abs() > 1e-14 * scale) || !det.is_finite() {
                return Err(Error::Diverged {
                    tau: f64::NAN,
                    reason: "normalization conditions are degenerate".into(),
                });
            }
            Ok(((b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det))
        };
        let at_origin = |g: &[f64]| g[0];
        let slope = |g: &[f64]| dot(&self.pin_slope, g);
        let h0 = |g: &[f64]| dot(&self.origin_hilbert, g);
        match self.model.scheme {
            NormalizationScheme::DegenerateSlope => two(&at_origin, &slope),
            NormalizationScheme::MinPin => two(&slope, &h0),
            NormalizationScheme::SupportPin => {
                let c_l = -self.model.a * dot(&self.pin_value, velocity);
                let denom = h0(f);
                if denom == 0.0 {
                    return Err(Error::Diverged { tau: f64::NAN, reason: "H(Omega)(0) vanished".into() });
                }
                let rhs: f64 = -(h0(f0) + c_l * h0(fl));
                Ok((c_l, rhs / denom))
            }
            other => Ok(other.constants().expect("constant scheme")),
        }
    }

    /// Largest stable step for the current rates.
    pub fn stable_dtau(&self, ev: &StageEval, settings: &RunSettings) -> f64 {
        let a = self.model.a;
        let k = self.model.k as f64;
        let x = &self.mesh.nodes;
        let drho = self.mesh.drho;
        let mut dt = settings.dtau_max;
        let mut react: f64 = 0.0;
        for j in 0..x.len() {
            let v = (ev.c_l * x[j] + a * ev.velocity[j]).abs();
            if v > 0.0 {
                dt = dt.min(settings.cfl * drho * self.mesh.dx_drho[j] / v);
            }
            let uox = if x[j] == 0.0 { ev.hilbert[j] } else { ev.velocity[j] / x[j] };
            react = react.max((ev.c_omega + ev.hilbert[j] - k * (ev.c_l + a * uox)).abs());
        }
        if react > 0.0 {
            dt = dt.min(settings.cfl / react);
        }
        dt
    }

    /// Residual of the current state: `||f_tau||` for `a > 0`, otherwise
    /// `||Omega_tau||` away from the pin point.
    pub fn residual(&self, ftau: &[f64], settings: &RunSettings) -> f64 {
        let x = &self.mesh.nodes;
        if self.model.a > 0.0 {
            ftau.iter().fold(0.0, |m, v| m.max(v.abs()))
        } else {
            (0..x.len())
                .filter(|&j| (x[j] - self.model.pin).abs() > settings.exclusion)
                .fold(0.0, |m, j| m.max((ftau[j] * self.xk[j]).abs()))
        }
    }

    /// Restore the normalization exactly using the scaling symmetry
    /// `Omega -> alpha Omega(beta X)`.
    pub fn renormalize(&self, state: &mut RescalingState) -> Result<()> {
        let scheme = self.model.scheme;
        if scheme.constants().is_some() {
            return Ok(());
        }
        if matches!(scheme, NormalizationScheme::DegenerateSlope | NormalizationScheme::MinPin) {
            // resampling moves the stationary point only approximately; repeat until it sits on the pin
            for _ in 0..8 {
                let beta = self.stationary_point_near_pin(&state.f)?.unwrap_or(self.model.pin) / self.model.pin;
                if (beta - 1.0).abs() <= 1e-15 {
                    break;
                }
                let sp = symmetric_spline(&self.mesh.nodes, &state.f, self.model.f_parity())?;
                let last = *self.mesh.nodes.last().unwrap();
                let tail = *state.f.last().unwrap();
                state.f = self
                    .mesh
                    .nodes
                    .iter()
                    .map(|&x| if beta * x > last { tail } else { sp.eval(beta * x) })
                    .collect();
            }
        }
        // H(Omega)(0) does not change under X -> beta X, so only the amplitude is fixed here
        let factor = match scheme {
            NormalizationScheme::DegenerateSlope => -1.0 / state.f[0],
            _ => state.hilbert_target / self.hilbert_at_origin(&state.f),
        };
        if !factor.is_finite() {
            return Err(Error::Diverged { tau: state.tau, reason: "renormalization failed".into() });
        }
        state.f.iter_mut().for_each(|v| *v *= factor);
        if scheme == NormalizationScheme::DegenerateSlope {
            state.f[0] = -1.0;
        }
        Ok(())
    }

    /// Zero of `Omega_X` closest to the pin point, if the spline has one in
    /// the neighbouring intervals.
    fn stationary_point_near_pin(&self, f: &[f64]) -> Result<Option<f64>> {
        let sp = Spline::natural(&self.mesh.nodes, &self.omega(f))?;
        let x = &self.mesh.nodes;
        let pin = self.model.pin;
        let i = sp.interval(pin);
        let lo = x[i.saturating_sub(2)];
        let hi = x[(i + 3).min(x.len() - 1)];
        let g = |t: f64| sp.deriv(t);
        // scan the bracketing intervals for a sign change, nearest first
        let mut best: Option<f64> = None;
        let pts: Vec<f64> = x.iter().copied().filter(|&t| t >= lo && t <= hi).collect();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if g(a) == 0.0 {
                best = nearest(best, a, pin);
                continue;
            }
            if g(a).signum() != g(b).signum() {
                let (mut l, mut r) = (a, b);
                for _ in 0..80 {
                    let m = 0.5 * (l + r);
                    if g(m).signum() == g(l).signum() {
                        l = m;
                    } else {
                        r = m;
                    }
                }
                best = nearest(best, 0.5 * (l + r), pin);
            }
        }
        Ok(best)
    }

    /// Full profile at the current state.
    pub fn snapshot(&self, state: &RescalingState) -> Snapshot {
        let omega = self.omega(&state.f);
        Snapshot {
            tau: state.tau,
            x: self.mesh.nodes.clone(),
            hilbert: self.op.hilbert(&omega),
            velocity: self.op.velocity(&omega),
            omega,
            f: state.f.clone(),
        }
    }

    /// Peak of `|Omega|` for the current state.
    pub fn peak(&self, f: &[f64]) -> Result<PeakSummary> {
        let sp = Spline::natural(&self.mesh.nodes, &self.omega(f))?;
        peak_summary_of(&sp)
    }
}

fn nearest(best: Option<f64>, cand: f64, pin: f64) -> Option<f64> {
    match best {
        Some(b) if (b - pin).abs() <= (cand - pin).abs() => Some(b),
        _ => Some(cand),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// `(c_l, c_w)` for a state.
pub fn compute_scaling_factors(solver: &Solver, state: &RescalingState) -> Result<(f64, f64)> {
    solver.compute_scaling_factors(&state.f, state.c_l)
}

/// Advance by one SSPRK(10,4) step of size `dtau`, then renormalize.
pub fn step(solver: &Solver, state: &mut RescalingState, dtau: f64) -> Result<()> {
    step_with_first_stage(solver, state, dtau, None)
}

fn step_with_first_stage(
    solver: &Solver,
    state: &mut RescalingState,
    dtau: f64,
    first: Option<(&[f64], f64)>,
) -> Result<()> {
    let mut c_last = (state.c_l, state.c_omega);
    let mut f = std::mem::take(&mut state.f);
    let res = ssprk::ssprk104_step(&mut f, dtau, |stage, u, out| -> Result<()> {
        if stage == 0 {
            if let Some((k0, c_l)) = first {
                out.copy_from_slice(k0);
                c_last.0 = c_l;
                return Ok(());
            }
        }
        let ev = solver.evaluate(u, c_last.0, out)?;
        c_last = (ev.c_l, ev.c_omega);
        Ok(())
    });
    state.f = f;
    res.map_err(|e| with_tau(e, state.tau))?;
    if state.f.iter().any(|v| !v.is_finite()) {
        return Err(Error::Diverged { tau: state.tau, reason: "non-finite profile".into() });
    }
    state.tau += dtau;
    state.c_l = c_last.0;
    state.c_omega = c_last.1;
    solver.renormalize(state)
}

fn with_tau(e: Error, tau: f64) -> Error {
    match e {
        Error::Diverged { reason, .. } => Error::Diverged { tau, reason },
        other => other,
    }
}

/// Evolve until the residual drops below `settings.tol`, `tau_max` or
/// `max_steps` is reached, or the run diverges.
///
/// A fresh solver is built from `model` and the state's mesh; it is rebuilt
/// whenever an adaptive remesh happens.
pub fn run_to_convergence(model: Model, state: RescalingState, settings: &RunSettings) -> Result<RunOutcome> {
    settings.validate()?;
    let solver = Solver::new(model, &state.mesh, settings)?;
    run_with_solver(solver, state, settings)
}

/// As [`run_to_convergence`], reusing an already built solver.
pub fn run_with_solver(mut solver: Solver, mut state: RescalingState, settings: &RunSettings) -> Result<RunOutcome> {
    settings.validate()?;
    let n0 = state.f.len();
    let mut history = ScalingHistory::default();
    let mut snapshots = Vec::new();
    let mut snap_queue: Vec<f64> = settings.snapshot_taus.clone();
    snap_queue.sort_by(|a, b| a.partial_cmp(b).unwrap());
    snap_queue.retain(|&t| t >= state.tau);
    let mut steps = 0usize;
    let mut remeshes = 0usize;
    let mut k0 = vec![0.0; n0];
    let mut prev: Option<HistoryRow> = None;
    let initial_max = state.f.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-300);

    let status = loop {
        if k0.len() != state.f.len() {
            k0 = vec![0.0; state.f.len()];
        }
        let ev = match solver.evaluate(&state.f, state.c_l, &mut k0) {
            Ok(ev) => ev,
            Err(Error::Diverged { reason, .. }) => break RunStatus::Diverged { reason },
            Err(e) => return Err(e),
        };
        state.c_l = ev.c_l;
        state.c_omega = ev.c_omega;
        let residual = solver.residual(&k0, settings);
        let peak = solver.peak(&state.f).ok();
        let row = next_row(prev.as_ref(), &state, residual, peak);
        let converged = residual < settings.tol;
        let stop = converged || state.tau >= settings.tau_max - 1e-12 || steps >= settings.max_steps;
        if history.is_empty() || steps.is_multiple_of(settings.record_every) || stop {
            history.rows.push(row);
        }
        prev = Some(row);
        while let Some(&ts) = snap_queue.first() {
            if ts <= state.tau + 1e-12 {
                snapshots.push(solver.snapshot(&state));
                snap_queue.remove(0);
            } else {
                break;
            }
        }
        if !residual.is_finite() || !ev.c_l.is_finite() || !ev.c_omega.is_finite() {
            break RunStatus::Diverged { reason: "non-finite residual or scaling rate".into() };
        }
        let fmax = state.f.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if fmax > 1e12 * initial_max {
            break RunStatus::Diverged { reason: format!("profile grew to {fmax:e}") };
        }
        if converged {
            break RunStatus::Converged;
        }
        if stop {
            break RunStatus::NotConverged;
        }
        let mut dtau = solver.stable_dtau(&ev, settings).min(settings.tau_max - state.tau);
        if let Some(&ts) = snap_queue.first() {
            if ts > state.tau {
                dtau = dtau.min(ts - state.tau);
            }
        }
        if !(dtau > 1e-14) {
            break RunStatus::Diverged { reason: format!("time step collapsed to {dtau:e}") };
        }
        match step_with_first_stage(&solver, &mut state, dtau, Some((&k0, ev.c_l))) {
            Ok(()) => {}
            Err(Error::Diverged { reason, .. }) => break RunStatus::Diverged { reason },
            Err(e) => return Err(e),
        }
        steps += 1;
        if settings.adaptive {
            if let Ok(p) = solver.peak(&state.f) {
                if should_remesh(solver.mesh(), p.x_m, p.width()) {
                    let spec = MeshSpec { x1: p.x1, x2: p.x2, x_m: p.x_m, ..state.mesh.spec };
                    let mesh = generate_mesh(&spec)?;
                    state.f = remesh(&state.mesh.nodes, &state.f, &mesh.nodes, solver.model.f_parity())?;
                    state.mesh = mesh;
                    solver = Solver::new(solver.model, &state.mesh, settings)?;
                    solver.renormalize(&mut state)?;
                    remeshes += 1;
                }
            }
        }
    };
    let last = solver.snapshot(&state);
    Ok(RunOutcome { state, history, status, snapshots, last, steps, remeshes })
}

fn next_row(prev: Option<&HistoryRow>, state: &RescalingState, residual: f64, peak: Option<PeakSummary>) -> HistoryRow {
    let (log_w, log_l, t) = match prev {
        None => (0.0, 0.0, 0.0),
        Some(p) => {
            let dt = state.tau - p.tau;
            let lw = p.log_c_omega + 0.5 * dt * (p.c_omega + state.c_omega);
            let ll = p.log_c_l + 0.5 * dt * (p.c_l + state.c_l);
            (lw, ll, p.t + exp_integral(p.log_c_omega, lw, dt))
        }
    };
    let (x_m, x1, x2, max_abs) = match peak {
        Some(p) => (p.x_m, p.x1, p.x2, p.value.abs()),
        None => (f64::NAN, f64::NAN, f64::NAN, 0.0),
    };
    HistoryRow {
        tau: state.tau,
        t,
        c_l: state.c_l,
        c_omega: state.c_omega,
        gamma: -state.c_l / state.c_omega,
        residual,
        log_c_omega: log_w,
        log_c_l: log_l,
        max_abs_omega: max_abs,
        x_m,
        x1,
        x2,
    }
}

/// `int_0^dt exp(l0 + (l1 - l0) s / dt) ds`.
pub(crate) fn exp_integral(l0: f64, l1: f64, dt: f64) -> f64 {
    let d = l1 - l0;
    if d.abs() < 1e-8 {
        dt * l0.exp() * (1.0 + 0.5 * d + d * d / 6.0)
    } else {
        dt * (l1.exp() - l0.exp()) / d
    }
}

/// Convenience: mesh, solver and initial state in one go.
pub fn setup(model: Model, spec: &MeshSpec, data: InitialData, settings: &RunSettings) -> Result<(Solver, RescalingState)> {
    let mesh = generate_mesh(spec)?;
    let solver = Solver::new(model, &mesh, settings)?;
    let state = solver.initial_state(data)?;
    Ok((solver, state))
}

/// Omega parity for callers that resample profiles.
pub fn omega_parity(model: &Model) -> Parity {
    model.omega_parity()
}

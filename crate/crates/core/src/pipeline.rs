//! End-to-end tasks shared by the command-line tool and the examples:
//! each one runs a module pipeline and writes its files into a directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{extract_inner_profile, fit_power_law, oracle_a0, FitResult, InnerProfile};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::io::{self, RunSummary, Timing};
use crate::profiles::{eval_profile, steady_residual, steady_triple, ProfileKind};
use crate::solver::{reconstruct_physical, run_with_solver, setup, RescalingState, RunOutcome, RunStatus, ScalingHistory, Solver};
use crate::traveling_wave::{check_membership, solve_fixed_point, Membership, TailClass, WaveResult, WaveSettings};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 2;
    pub const DIVERGED: i32 = 3;
    pub const NOT_CONVERGED: i32 = 4;
}

/// Exit code for a run status.
pub fn status_code(status: &RunStatus, horizon: bool) -> i32 {
    match status {
        RunStatus::Converged => exit::OK,
        RunStatus::NotConverged if horizon => exit::OK,
        RunStatus::NotConverged => exit::NOT_CONVERGED,
        RunStatus::Diverged { .. } => exit::DIVERGED,
    }
}

/// Exit code for an error raised before or during a task.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Mesh(_) | Error::Json(_) => exit::CONFIG,
        Error::Diverged { .. } => exit::DIVERGED,
        Error::NotConverged { .. } => exit::NOT_CONVERGED,
        _ => 1,
    }
}

/// Mesh, operators and initial state for a configuration, with the
/// amplitude normalization applied.
pub fn prepare(cfg: &RunConfig) -> Result<(Solver, RescalingState)> {
    cfg.validate()?;
    let (solver, mut state) = setup(cfg.model, &cfg.mesh, cfg.data, &cfg.settings)?;
    let mut factor = cfg.amplitude;
    if let Some(target) = cfg.hilbert_origin {
        let h0 = solver.hilbert_at_origin(&state.f);
        if !(h0.abs() > 0.0) {
            return Err(Error::Config("H(Omega_0)(0) vanishes; cannot normalize it".into()));
        }
        factor = target / h0;
    }
    if factor != 1.0 {
        state.f.iter_mut().for_each(|v| *v *= factor);
        state.hilbert_target = solver.hilbert_at_origin(&state.f);
        let (c_l, c_omega) = solver.compute_scaling_factors(&state.f, 0.0)?;
        state.c_l = c_l;
        state.c_omega = c_omega;
    }
    Ok((solver, state))
}

/// Run a configuration to completion.
pub fn simulate(cfg: &RunConfig) -> Result<RunOutcome> {
    let (solver, state) = prepare(cfg)?;
    run_with_solver(solver, state, &cfg.settings)
}

/// Files of a finished simulation.
pub fn write_run(dir: &Path, cfg: &RunConfig, out: &RunOutcome, wall_time_s: f64) -> Result<RunSummary> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("config.cfg"), cfg.render())?;
    io::write_history(&dir.join("history.csv"), &out.history)?;
    for s in &out.snapshots {
        io::write_snapshot(&dir.join(io::snapshot_name(s.tau)), s)?;
    }
    io::write_snapshot(&dir.join("profile.csv"), &out.last)?;
    let summary = RunSummary::from_outcome(&cfg.name, out);
    io::write_json(&dir.join("summary.json"), &summary)?;
    io::write_json(&dir.join("timing.json"), &Timing { wall_time_s })?;
    Ok(summary)
}

/// Simulate and write; returns the summary and the exit code.
pub fn simulate_to(dir: &Path, cfg: &RunConfig) -> Result<(RunSummary, i32)> {
    let t0 = Instant::now();
    let out = simulate(cfg)?;
    let summary = write_run(dir, cfg, &out, t0.elapsed().as_secs_f64())?;
    Ok((summary, status_code(&out.status, cfg.horizon)))
}

/// Outcome of one entry of a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntry {
    pub name: String,
    pub code: i32,
    pub summary: Option<RunSummary>,
    pub error: Option<String>,
}

/// Run configurations concurrently on `threads` workers (0 picks the
/// default), each into `root/<name>`. Results keep the input order.
pub fn sweep(root: &Path, configs: &[RunConfig], threads: usize) -> Result<Vec<SweepEntry>> {
    let mut names: Vec<&str> = configs.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("sweep entries need distinct names".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let entries = pool.install(|| {
        configs
            .par_iter()
            .map(|cfg| match simulate_to(&root.join(&cfg.name), cfg) {
                Ok((s, code)) => SweepEntry { name: cfg.name.clone(), code, summary: Some(s), error: None },
                Err(e) => SweepEntry { name: cfg.name.clone(), code: error_code(&e), summary: None, error: Some(e.to_string()) },
            })
            .collect::<Vec<_>>()
    });
    io::write_json(&root.join("sweep.json"), &entries)?;
    Ok(entries)
}

/// JSON record of a traveling-wave computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSummary {
    pub a: f64,
    pub r: f64,
    pub iterations: usize,
    pub increment: f64,
    pub converged: bool,
    pub tail: Option<TailClass>,
    pub membership: Membership,
    pub nodes: usize,
}

/// Solve for the traveling wave and write `wave.csv` and `wave.json`.
pub fn traveling_wave_to(dir: &Path, a: f64, settings: &WaveSettings) -> Result<(WaveResult, WaveSummary)> {
    let t0 = Instant::now();
    let res = solve_fixed_point(a, settings)?;
    let membership = check_membership(&res.profile, a)?;
    let summary = WaveSummary {
        a,
        r: res.r,
        iterations: res.iterations,
        increment: res.increment,
        converged: res.converged,
        tail: res.tail,
        membership,
        nodes: res.profile.x.len(),
    };
    std::fs::create_dir_all(dir)?;
    let p = &res.profile;
    io::write_csv(&dir.join("wave.csv"), &["x", "omega"], (0..p.x.len()).map(|j| vec![p.x[j], p.omega[j]]))?;
    io::write_json(&dir.join("wave.json"), &summary)?;
    io::write_json(&dir.join("timing.json"), &Timing { wall_time_s: t0.elapsed().as_secs_f64() })?;
    Ok((res, summary))
}

/// One line of a residual table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub x: f64,
    pub omega: f64,
    pub hilbert: f64,
    pub velocity: f64,
    pub residual: f64,
}

/// Residual of the steady equation for a closed-form profile.
pub fn verify_profile(kind: ProfileKind, points: &[f64]) -> Result<Vec<ResidualRow>> {
    let triple = steady_triple(kind)?;
    let r = steady_residual(&triple, points)?;
    points
        .iter()
        .zip(r)
        .map(|(&x, residual)| {
            let v = eval_profile(kind, x)?;
            Ok(ResidualRow { x, omega: v.omega, hilbert: v.hilbert, velocity: v.velocity, residual })
        })
        .collect()
}

/// Two-scale exponents from a recorded history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoScaleFit {
    /// Exponent of `||omega||_inf ~ (T - t)^lambda_hat`.
    pub amplitude: FitResult,
    /// Exponent of the physical half-width `~ (T - t)^gamma_hat`.
    pub width: FitResult,
    pub gamma: f64,
}

/// Fit the physical amplitude and width reconstructed from `history` over
/// the time window `window`. Without a window, the second half (in `t`) of
/// the recorded range is used.
pub fn fit_history(history: &ScalingHistory, window: Option<[f64; 2]>) -> Result<TwoScaleFit> {
    let phys = reconstruct_physical(history)?;
    let window = window.unwrap_or_else(|| {
        let (t0, t1) = (phys.t[0], phys.t[phys.t.len() - 1]);
        [0.5 * (t0 + t1), t1]
    });
    let amplitude = fit_power_law(&phys.t, &phys.max_abs_omega, window)?;
    let width = fit_power_law(&phys.t, &phys.width, window)?;
    let gamma = history.last().map_or(f64::NAN, |r| r.gamma);
    Ok(TwoScaleFit { amplitude, width, gamma })
}

/// Fit a history CSV and write `fit.json` next to it.
pub fn fit_to(history_csv: &Path, dir: &Path, window: Option<[f64; 2]>) -> Result<TwoScaleFit> {
    let h = io::read_history(history_csv)?;
    let fit = fit_history(&h, window)?;
    std::fs::create_dir_all(dir)?;
    io::write_json(&dir.join("fit.json"), &fit)?;
    Ok(fit)
}

/// Inner profile of a snapshot CSV, written as `inner.csv` and `inner.json`.
pub fn inner_profile_to(snapshot_csv: &Path, dir: &Path, extent: f64, samples: usize) -> Result<InnerProfile> {
    let (h, rows) = io::read_csv(snapshot_csv)?;
    let x = io::column(&h, &rows, "X")?;
    let omega = io::column(&h, &rows, "Omega")?;
    let inner = extract_inner_profile(&x, &omega, extent, samples)?;
    std::fs::create_dir_all(dir)?;
    io::write_csv(
        &dir.join("inner.csv"),
        &["X_hat", "Omega_hat"],
        inner.x_hat.iter().zip(&inner.omega_hat).map(|(a, b)| vec![*a, *b]),
    )?;
    io::write_json(&dir.join("inner.json"), &inner.peak)?;
    Ok(inner)
}

/// Oracle values `(x, F, G)` on `points` at time `t`, written as `oracle.csv`.
pub fn oracle_to(dir: &Path, points: &[f64], t: f64) -> Result<Vec<[f64; 3]>> {
    if !(t >= 0.0) {
        return Err(Error::Config("the oracle needs t >= 0".into()));
    }
    let rows: Vec<[f64; 3]> = points
        .iter()
        .map(|&x| {
            let p = oracle_a0(x, t);
            [x, p.f, p.g]
        })
        .collect();
    std::fs::create_dir_all(dir)?;
    io::write_csv(&dir.join("oracle.csv"), &["x", "F", "G"], rows.iter().map(|r| r.to_vec()))?;
    Ok(rows)
}

/// `root/<name>`.
pub fn run_dir(root: &Path, name: &str) -> PathBuf {
    root.join(name)
}

//! Acceptance checks, one line each. Slow checks run only with `--ignored` or
//! `--include-ignored`:
//!
//! ```text
//! cargo test --release --test acceptance
//! cargo test --release --test acceptance -- --include-ignored
//! ```

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use gclm::analysis::{compare_profiles, extract_inner_profile, fit_power_law, oracle_a0, truncated_odd_lorentzian_hilbert};
use gclm::config::RunConfig;
use gclm::io::RunSummary;
use gclm::hilbert::{DenseOperator, Folding};
use gclm::mesh::{generate_mesh, MeshSpec};
use gclm::pipeline::{fit_history, simulate, write_run};
use gclm::profiles::{eval_profile, steady_residual, steady_triple, ProfileKind};
use gclm::solver::{setup, step, InitialData, Model, NormalizationScheme, RunSettings, Symmetry};
use gclm::spline::Spline;
use gclm::traveling_wave::{
    check_membership, eta_a, iterate_from, solve_fixed_point, wave_grid, TailClass, WaveOperator, WaveProfile,
    WaveSettings,
};

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> gclm::Result<Outcome>;

fn outcome(pass: bool, detail: String) -> gclm::Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn sup_diff(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Max error of the odd Lorentzian transform on |X| <= 10 against the
/// transform of the same function cut off at the outer node.
fn hilbert_error(drho: f64, n_bulk: usize) -> gclm::Result<(f64, usize)> {
    let spec = MeshSpec { x1: 0.25, x2: 0.75, x_m: 0.5, outer: 1e4, drho, n_bulk };
    let mesh = generate_mesh(&spec)?;
    let op = DenseOperator::build(&mesh.nodes, Folding::Odd, &[])?;
    let f: Vec<f64> = mesh.nodes.iter().map(|x| -4.0 * x / (1.0 + 4.0 * x * x)).collect();
    let h = op.hilbert(&f);
    let m = *mesh.nodes.last().expect("mesh is non-empty");
    let err = mesh
        .nodes
        .iter()
        .zip(&h)
        .filter(|(x, _)| **x <= 10.0)
        .map(|(x, v)| (v - truncated_odd_lorentzian_hilbert(*x, m)).abs())
        .fold(0.0, f64::max);
    Ok((err, op.full_grid().len()))
}

fn hilbert_kernel() -> gclm::Result<Outcome> {
    let t0 = Instant::now();
    let (coarse, _) = hilbert_error(0.02, 50)?;
    let (fine, nodes) = hilbert_error(0.01, 100)?;
    let secs = t0.elapsed().as_secs_f64();
    let ratio = coarse / fine;
    outcome(
        fine <= 1e-6 && ratio >= 8.0 && secs < 10.0,
        format!("max err {fine:.2e} (<= 1e-6) on {nodes} nodes, refinement ratio {ratio:.1} (>= 8), {secs:.1} s (< 10)"),
    )
}

fn oracle_equivalence() -> gclm::Result<Outcome> {
    let cfg = RunConfig::load("oracle_a0")?;
    let out = simulate(&cfg)?;
    let snap = out
        .snapshots
        .iter()
        .find(|s| (s.tau - 4.0).abs() < 1e-9)
        .ok_or_else(|| gclm::Error::Invalid("no snapshot at tau = 4".into()))?;
    let err = snap
        .x
        .iter()
        .zip(&snap.hilbert)
        .filter(|(x, _)| **x <= 0.8 || (**x >= 1.2 && **x <= 3.0))
        .map(|(x, g)| (g - oracle_a0(*x, snap.tau).g).abs())
        .fold(0.0, f64::max);
    outcome(err <= 5e-3, format!("sup |G - G_exact| at tau = 4: {err:.2e} (<= 5e-3)"))
}

fn preset_gamma(name: &str, target: f64, tol: f64) -> gclm::Result<Outcome> {
    let cfg = RunConfig::load(name)?;
    let out = simulate(&cfg)?;
    let s = RunSummary::from_outcome(name, &out);
    let gamma = s.gamma;
    let converged = out.status == gclm::solver::RunStatus::Converged;
    outcome(
        converged && (gamma - target).abs() <= tol,
        format!("{name}: gamma {gamma:.5} (target {target} +- {tol}), status {:?}, tau {:.1}", out.status, s.tau),
    )
}

fn table1() -> gclm::Result<Outcome> {
    let a = preset_gamma("table1_a0.5_k3", -1.4771, 0.01)?;
    let b = preset_gamma("table1_a0.3_k3", -0.2061, 0.01)?;
    outcome(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn half_line(name: &str, a: f64) -> gclm::Result<Outcome> {
    let cfg = RunConfig::load(name)?;
    let out = simulate(&cfg)?;
    let gamma = RunSummary::from_outcome(name, &out).gamma;
    let target = 1.0 - a;
    // compare shapes with both profiles scaled to agree at X = 2
    let kind = ProfileKind::SingularHalfLine { a };
    let sp = Spline::natural(&out.last.x, &out.last.omega)?;
    let scale = eval_profile(kind, 2.0)?.omega / sp.eval(2.0);
    let mut rel = 0.0_f64;
    for i in 0..=400 {
        let x = 1.2 + 8.8 * i as f64 / 400.0;
        let exact = eval_profile(kind, x)?.omega;
        rel = rel.max((scale * sp.eval(x) - exact).abs() / exact.abs());
    }
    outcome(
        (gamma - target).abs() <= 0.01 && rel <= 0.02,
        format!("{name}: gamma {gamma:.4} (target {target} +- 0.01), profile rel err on [1.2, 10] {rel:.2e} (<= 2%)"),
    )
}

fn table4() -> gclm::Result<Outcome> {
    let a = half_line("table4_a-0.5", -0.5)?;
    let b = half_line("table4_a-1.0", -1.0)?;
    outcome(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn table3() -> gclm::Result<Outcome> {
    let cfg = RunConfig::load("table3_a-1.0")?;
    let out = simulate(&cfg)?;
    let gamma = RunSummary::from_outcome("table3_a-1.0", &out).gamma;
    outcome(
        (gamma - 1.6841).abs() <= 0.02,
        format!("table3_a-1.0: gamma {gamma:.4} (target 1.6841 +- 0.02), status {:?}", out.status),
    )
}

fn traveling_wave_a0() -> gclm::Result<Outcome> {
    let t0 = Instant::now();
    let x = wave_grid(1e3, 1.0, 0.0025)?;
    let op = WaveOperator::new(0.0, &x)?;
    let exact: Vec<f64> = x.iter().map(|t| 1.0 / (1.0 + t * t)).collect();
    let one = WaveSettings { max_iter: 1, tol: 0.0, ..Default::default() };
    let fixed = iterate_from(&op, WaveProfile::new(x.clone(), exact.clone())?, &one, |_, _, _| {})?;
    let inc = fixed.increment;

    let start = WaveProfile::from_fn(x.clone(), |t| {
        let s = t / 1.3;
        0.5 / (1.0 + s * s) + 0.5 * (-s * s).exp()
    })?;
    let admissible = check_membership(&start, 0.0)?.passes(0.0);
    let settings = WaveSettings { tol: 1e-10, max_iter: 2000, ..Default::default() };
    let res = iterate_from(&op, start, &settings, |_, _, _| {})?;
    let err = sup_diff(&res.profile.omega, &exact);
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        inc <= 1e-8 && admissible && res.converged && err <= 1e-6 && (res.r - 0.5).abs() <= 1e-6 && secs < 60.0,
        format!(
            "increment from 1/(1+x^2) {inc:.2e} (<= 1e-8); perturbed start: {} iterations, sup err {err:.2e} (<= 1e-6), \
             r - 1/2 = {:.2e} (<= 1e-6), {secs:.1} s",
            res.iterations,
            res.r - 0.5
        ),
    )
}

fn tail_classification() -> gclm::Result<Outcome> {
    let settings = WaveSettings { drho: 0.01, ..Default::default() };
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, expected) in [(-0.5, -2.0 / 3.0), (-1.0, -0.5)] {
        let res = solve_fixed_point(a, &settings)?;
        match res.tail {
            Some(TailClass::PowerLaw { exponent, .. }) => {
                pass &= res.converged && (exponent - expected).abs() <= 0.03;
                parts.push(format!("a = {a}: exponent {exponent:.4} (target {expected:.4} +- 0.03)"));
            }
            other => {
                pass = false;
                parts.push(format!("a = {a}: {other:?}"));
            }
        }
    }
    let res = solve_fixed_point(0.5, &settings)?;
    match res.tail {
        Some(TailClass::CompactSupport { radius, .. }) => {
            let beyond = res.profile.x.iter().zip(&res.profile.omega).filter(|(t, _)| **t > radius).map(|(_, v)| *v).fold(0.0, f64::max);
            pass &= res.converged && beyond <= 1e-10;
            parts.push(format!("a = 0.5: support radius {radius:.4}, max w beyond {beyond:.1e} (<= 1e-10)"));
        }
        other => {
            pass = false;
            parts.push(format!("a = 0.5: {other:?}"));
        }
    }
    outcome(pass, parts.join("; "))
}

fn synthetic_fit() -> gclm::Result<Outcome> {
    let big_t = 2.0;
    let t: Vec<f64> = (0..400).map(|i| 1.0 + 0.9 * i as f64 / 399.0).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for eta in [-1.5, -1.2, 1.0] {
        let v: Vec<f64> = t.iter().map(|s| 3.0 * (big_t - s).powf(eta)).collect();
        let fit = fit_power_law(&t, &v, [1.0, 1.9])?;
        pass &= (fit.eta - eta).abs() <= 1e-3 && fit.r2 >= 0.9999;
        parts.push(format!("eta {eta}: {:.6} R^2 {:.6}", fit.eta, fit.r2));
    }
    outcome(pass, parts.join("; "))
}

fn steady_residuals() -> gclm::Result<Outcome> {
    let mut worst = 0.0_f64;
    for a in [-0.25, -0.5, -1.0] {
        let triple = steady_triple(ProfileKind::SingularHalfLine { a })?;
        let r = steady_residual(&triple, &[1.5, 2.0, 5.0])?;
        worst = r.iter().fold(worst, |m, v| m.max(v.abs()));
    }
    outcome(worst <= 1e-10, format!("max |R| {worst:.2e} (<= 1e-10)"))
}

fn two_scale() -> gclm::Result<Outcome> {
    let cfg = RunConfig::load("table5_a-0.2")?;
    let out = simulate(&cfg)?;
    let fit = fit_history(&out.history, cfg.fit_window)?;
    let (lh, gh) = (fit.amplitude.eta, fit.width.eta);
    let inner = extract_inner_profile(&out.last.x, &out.last.omega, 5.0, 401)?;
    let wave = solve_fixed_point(-0.2, &WaveSettings { drho: 0.01, ..Default::default() })?;
    let (wx, ww) = (&wave.profile.x, &wave.profile.omega);
    let xs: Vec<f64> = wx.iter().rev().map(|t| -t).chain(wx.iter().skip(1).copied()).collect();
    let ws: Vec<f64> = ww.iter().rev().chain(ww.iter().skip(1)).map(|v| -v).collect();
    let wave_inner = extract_inner_profile(&xs, &ws, 5.0, 401)?;
    let d = compare_profiles((&inner.x_hat, &inner.omega_hat), (&wave_inner.x_hat, &wave_inner.omega_hat), [-5.0, 5.0], 1001)?;
    outcome(
        (lh + 1.4691).abs() <= 0.05 && (gh - 1.8698).abs() <= 0.07 && d.sup_abs <= 5e-2,
        format!(
            "lambda_hat {lh:.4} (-1.4691 +- 0.05), gamma_hat {gh:.4} (1.8698 +- 0.07), inner vs wave {:.2e} (<= 5e-2)",
            d.sup_abs
        ),
    )
}

/// Short in-process versions of the property suites.
fn property_suites() -> gclm::Result<Outcome> {
    let spec = MeshSpec { x1: 0.5, x2: 1.5, x_m: 1.0, outer: 1e3, drho: 0.04, n_bulk: 25 };
    let mesh = generate_mesh(&spec)?;
    let monotone = mesh.nodes.windows(2).all(|w| w[0] < w[1]);

    let model = Model { a: 0.5, k: 3, symmetry: Symmetry::Odd, scheme: NormalizationScheme::DegenerateSlope, pin: 1.0 };
    let settings = RunSettings::default();
    let (solver, mut state) = setup(model, &spec, InitialData::Rational, &settings)?;
    let mut k = vec![0.0; state.f.len()];
    let (mut degenerate, mut signed) = (true, true);
    for _ in 0..20 {
        let ev = solver.evaluate(&state.f, state.c_l, &mut k)?;
        state.c_l = ev.c_l;
        state.c_omega = ev.c_omega;
        step(&solver, &mut state, solver.stable_dtau(&ev, &settings))?;
        let omega = solver.omega(&state.f);
        let m = omega.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let sp = Spline::natural(&solver.mesh().nodes, &omega)?;
        degenerate &= state.f[0] == -1.0 && sp.deriv(1.0).abs() <= 1e-10 * m;
        signed &= omega.iter().all(|v| *v <= 1e-10 * m);
    }

    let a = -0.5;
    let x = wave_grid(1e4, 1.0, 0.02)?;
    let op = WaveOperator::new(a, &x)?;
    let start = WaveProfile::from_fn(x, |t| 1.0 / (1.0 + t * t))?;
    let (lo, hi) = (eta_a(a) / PI, 2.0 / PI);
    let mut closed = true;
    iterate_from(&op, start, &WaveSettings { max_iter: 6, tol: 0.0, ..Default::default() }, |_, w, r| {
        closed &= check_membership(w, a).map(|m| m.passes(1e-8)).unwrap_or(false) && r >= lo && r <= hi;
    })?;

    let dir = std::env::temp_dir().join(format!("gclm-acceptance-{}", std::process::id()));
    let mut cfg = RunConfig::load("table1_a0.5_k3")?;
    cfg.settings.tau_max = 0.5;
    cfg.horizon = true;
    let mut bytes = Vec::new();
    for run in ["a", "b"] {
        let d = dir.join(run);
        write_run(&d, &cfg, &simulate(&cfg)?, 0.0)?;
        bytes.push((std::fs::read(d.join("history.csv"))?, std::fs::read(d.join("profile.csv"))?));
    }
    std::fs::remove_dir_all(&dir)?;
    let reproducible = bytes[0] == bytes[1];

    outcome(
        monotone && degenerate && signed && closed && reproducible,
        format!(
            "mesh monotone {monotone}, degeneracy {degenerate}, sign {signed}, D_a closure and r bounds {closed}, \
             byte-reproducible {reproducible}; full suites: tests/solver_props.rs, tests/traveling_wave_props.rs, \
             tests/mesh_props.rs, tests/cli.rs"
        ),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let slow_enabled = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let checks: [(&str, Check, bool); 11] = [
        ("hilbert kernel accuracy", hilbert_kernel, false),
        ("a = 0 oracle equivalence", oracle_equivalence, false),
        ("table 1 exponents (a > 0)", table1, false),
        ("table 4 exponents and profiles (a < 0, half-line)", table4, true),
        ("table 3 spot check (a = -1, odd)", table3, true),
        ("traveling wave a = 0", traveling_wave_a0, false),
        ("tail and support classification", tail_classification, false),
        ("synthetic power-law fit", synthetic_fit, false),
        ("steady residuals", steady_residuals, false),
        ("two-scale exponents and inner profile (a = -0.2)", two_scale, true),
        ("property suites", property_suites, false),
    ];
    let mut failed = 0;
    for (name, check, slow) in checks {
        if slow && !slow_enabled {
            println!("SKIP {name}: slow, run with --include-ignored");
            continue;
        }
        let t0 = Instant::now();
        let (tag, detail) = match check() {
            Ok(o) => (if o.pass { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {name}: {detail} [{:.1} s]", t0.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

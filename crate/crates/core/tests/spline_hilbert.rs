use gclm::analysis::truncated_odd_lorentzian_hilbert;
use gclm::hilbert::{hilbert_at_nodes, velocity_at_nodes, DenseOperator, Folding};
use gclm::mesh::{generate_mesh, MeshSpec};
use gclm::profiles::{eval_profile, ProfileKind};
use gclm::spline::Spline;
use proptest::prelude::*;

fn symmetric_grid(n: usize, stretch: f64) -> Vec<f64> {
    (0..=2 * n).map(|i| ((i as f64 - n as f64) / n as f64 * stretch).sinh()).collect()
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn cubic_is_reproduced_on_interior_third() {
    let x: Vec<f64> = (0..120).map(|i| i as f64 * 0.1 + 0.004 * (i as f64).sin()).collect();
    let p = |t: f64| 0.3 * t * t * t - t * t + 2.0 * t - 5.0;
    let f: Vec<f64> = x.iter().map(|&t| p(t)).collect();
    let sp = Spline::natural(&x, &f).unwrap();
    let (lo, hi) = (x[40], x[80]);
    for i in 0..=200 {
        let t = lo + (hi - lo) * i as f64 / 200.0;
        assert!((sp.eval(t) - p(t)).abs() <= 1e-12 * p(t).abs().max(1.0), "{t}");
    }
}

#[test]
fn interpolation_error_drops_eightfold_on_refinement() {
    let err = |n: usize| {
        let x = symmetric_grid(n, (100.0_f64).asinh());
        let f: Vec<f64> = x.iter().map(|t| 1.0 / (1.0 + t * t)).collect();
        let sp = Spline::natural(&x, &f).unwrap();
        max_abs(x.windows(2).filter(|w| w[1].abs() <= 10.0).map(|w| {
            let m = 0.5 * (w[0] + w[1]);
            sp.eval(m) - 1.0 / (1.0 + m * m)
        }))
    };
    let (e1, e2) = (err(1024), err(2048));
    assert!(e1 / e2 >= 8.0, "{e1} {e2}");
}

#[test]
fn zero_function_has_zero_transform() {
    let x = symmetric_grid(30, 3.0);
    let z = vec![0.0; x.len()];
    assert!(hilbert_at_nodes(&x, &z).unwrap().iter().all(|v| *v == 0.0));
    assert!(velocity_at_nodes(&x, &z).unwrap().iter().all(|v| *v == 0.0));
}

#[test]
fn odd_lorentzian_converges_at_fourth_order() {
    let mut errors = Vec::new();
    for (drho, n_bulk) in [(0.04, 25), (0.02, 50), (0.01, 100)] {
        let spec = MeshSpec { x1: 0.25, x2: 0.75, x_m: 0.5, outer: 1e4, drho, n_bulk };
        let mesh = generate_mesh(&spec).unwrap();
        let op = DenseOperator::build(&mesh.nodes, Folding::Odd, &[]).unwrap();
        let f: Vec<f64> = mesh.nodes.iter().map(|x| -4.0 * x / (1.0 + 4.0 * x * x)).collect();
        let h = op.hilbert(&f);
        errors.push(max_abs(
            mesh.nodes
                .iter()
                .zip(&h)
                .filter(|(x, _)| **x <= 10.0)
                .map(|(x, v)| v - truncated_odd_lorentzian_hilbert(*x, 1e4)),
        ));
    }
    assert!(errors[2] < 1e-8, "{errors:?}");
    assert!(errors[0] / errors[1] >= 8.0 && errors[1] / errors[2] >= 8.0, "{errors:?}");
}

#[test]
fn lorentzian_velocity_is_half_log() {
    let x = symmetric_grid(800, (1e4_f64).asinh());
    let f: Vec<f64> = x.iter().map(|t| 1.0 / (1.0 + t * t)).collect();
    let u = velocity_at_nodes(&x, &f).unwrap();
    let err = max_abs(x.iter().zip(&u).filter(|(t, _)| t.abs() <= 10.0).map(|(t, v)| v - 0.5 * (1.0 + t * t).ln()));
    assert!(err < 1e-6, "{err}");
    let zero = x.iter().position(|t| *t == 0.0).unwrap();
    assert_eq!(u[zero], 0.0);
}

#[test]
fn velocity_derivative_matches_hilbert() {
    let n = 400;
    let x: Vec<f64> = (0..=2 * n).map(|i| -8.0 + 8.0 * i as f64 / n as f64).collect();
    let f: Vec<f64> = x.iter().map(|t| (-t * t).exp() * (1.0 + 0.3 * t)).collect();
    let h = hilbert_at_nodes(&x, &f).unwrap();
    let u = velocity_at_nodes(&x, &f).unwrap();
    let dx = x[1] - x[0];
    let err = max_abs((1..x.len() - 1).map(|j| (u[j + 1] - u[j - 1]) / (2.0 * dx) - h[j]));
    assert!(err < 2.0 * dx * dx, "{err}");
}

#[test]
fn sampled_clm_profile_reproduces_analytic_transform() {
    let spec = MeshSpec { x1: 0.25, x2: 0.75, x_m: 0.5, outer: 1e8, drho: 0.01, n_bulk: 100 };
    let mesh = generate_mesh(&spec).unwrap();
    let op = DenseOperator::build(&mesh.nodes, Folding::Odd, &[]).unwrap();
    let values: Vec<_> = mesh.nodes.iter().map(|&x| eval_profile(ProfileKind::Clm0, x).unwrap()).collect();
    let omega: Vec<f64> = values.iter().map(|v| v.omega).collect();
    let h = op.hilbert(&omega);
    let u = op.velocity(&omega);
    for j in 0..mesh.len() {
        if mesh.nodes[j] <= 10.0 {
            assert!((h[j] - values[j].hilbert).abs() < 1e-6, "H at {}", mesh.nodes[j]);
            assert!((u[j] - values[j].velocity).abs() < 1e-6, "U at {}: {} vs {}", mesh.nodes[j], u[j], values[j].velocity);
        }
    }
}

fn smooth(c: [f64; 3]) -> impl Fn(f64) -> f64 {
    move |t: f64| (c[0] + c[1] * t + c[2] * t * t) * (-t * t).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_is_linear(
        alpha in -3.0..3.0_f64,
        beta in -3.0..3.0_f64,
        c in prop::array::uniform3(-1.0..1.0_f64),
        d in prop::array::uniform3(-1.0..1.0_f64),
    ) {
        let x = symmetric_grid(40, 2.5);
        let f: Vec<f64> = x.iter().map(|&t| smooth(c)(t)).collect();
        let g: Vec<f64> = x.iter().map(|&t| smooth(d)(t)).collect();
        let comb: Vec<f64> = f.iter().zip(&g).map(|(p, q)| alpha * p + beta * q).collect();
        let (hf, hg, hc) = (
            hilbert_at_nodes(&x, &f).unwrap(),
            hilbert_at_nodes(&x, &g).unwrap(),
            hilbert_at_nodes(&x, &comb).unwrap(),
        );
        let scale = max_abs(hc.iter().copied()).max(1e-300);
        for j in 0..x.len() {
            prop_assert!((hc[j] - alpha * hf[j] - beta * hg[j]).abs() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn parity_is_exchanged(c in prop::array::uniform3(-1.0..1.0_f64), stretch in 1.0..4.0_f64) {
        let x = symmetric_grid(40, stretch);
        let n = x.len();
        let even = |t: f64| smooth(c)(t) + smooth(c)(-t);
        let odd = |t: f64| smooth(c)(t) - smooth(c)(-t);
        let he = hilbert_at_nodes(&x, &x.iter().map(|&t| even(t)).collect::<Vec<_>>()).unwrap();
        let ho = hilbert_at_nodes(&x, &x.iter().map(|&t| odd(t)).collect::<Vec<_>>()).unwrap();
        let uo = velocity_at_nodes(&x, &x.iter().map(|&t| odd(t)).collect::<Vec<_>>()).unwrap();
        for j in 0..n {
            prop_assert!((he[j] + he[n - 1 - j]).abs() <= 1e-10);
            prop_assert!((ho[j] - ho[n - 1 - j]).abs() <= 1e-10);
            prop_assert!((uo[j] + uo[n - 1 - j]).abs() <= 1e-10);
        }
    }

    #[test]
    fn spline_hits_nodes_and_natural_ends(vals in prop::collection::vec(-5.0..5.0_f64, 6..40)) {
        let x: Vec<f64> = (0..vals.len()).map(|i| (i as f64).powf(1.3)).collect();
        let sp = Spline::natural(&x, &vals).unwrap();
        let scale = max_abs(vals.iter().copied()).max(1.0);
        for (t, v) in x.iter().zip(&vals) {
            prop_assert_eq!(sp.eval(*t), *v);
        }
        prop_assert!(sp.second_deriv(x[0]).abs() <= 1e-10 * scale * 100.0);
        prop_assert!(sp.second_deriv(x[x.len() - 1]).abs() <= 1e-10 * scale * 100.0);
    }
}

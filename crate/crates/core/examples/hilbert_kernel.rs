//! Accuracy of the spline Hilbert transform on `-4X/(1 + 4X^2)` over graded
//! meshes of increasing resolution.
//!
//! ```text
//! cargo run --example hilbert_kernel
//! ```

use gclm::analysis::truncated_odd_lorentzian_hilbert;
use gclm::hilbert::{DenseOperator, Folding};
use gclm::mesh::{generate_mesh, MeshSpec};

fn main() -> gclm::Result<()> {
    println!("{:>8} {:>7} {:>12} {:>12} {:>8}", "drho", "nodes", "err_trunc", "err_full", "ratio");
    let mut prev: Option<f64> = None;
    for (drho, n_bulk) in [(0.04, 25), (0.02, 50), (0.01, 100)] {
        let spec = MeshSpec { x1: 0.25, x2: 0.75, x_m: 0.5, outer: 1e4, drho, n_bulk };
        let mesh = generate_mesh(&spec)?;
        let op = DenseOperator::build(&mesh.nodes, Folding::Odd, &[])?;
        let f: Vec<f64> = mesh.nodes.iter().map(|x| -4.0 * x / (1.0 + 4.0 * x * x)).collect();
        let h = op.hilbert(&f);
        let m = *mesh.nodes.last().unwrap();
        let (mut err_trunc, mut err_full) = (0.0_f64, 0.0_f64);
        for (x, v) in mesh.nodes.iter().zip(&h).filter(|(x, _)| **x <= 10.0) {
            err_trunc = err_trunc.max((v - truncated_odd_lorentzian_hilbert(*x, m)).abs());
            err_full = err_full.max((v - 2.0 / (1.0 + 4.0 * x * x)).abs());
        }
        let ratio = prev.map_or(f64::NAN, |p| p / err_trunc);
        println!("{drho:>8} {:>7} {err_trunc:>12.3e} {err_full:>12.3e} {ratio:>8.1}", op.full_grid().len());
        prev = Some(err_trunc);
    }
    Ok(())
}

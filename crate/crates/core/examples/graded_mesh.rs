//! Graded mesh generation and transfer of a profile between two meshes.
//!
//! ```text
//! cargo run --example graded_mesh
//! ```

use gclm::mesh::{generate_mesh, remesh, MeshSpec, Parity};

fn main() -> gclm::Result<()> {
    let spec = MeshSpec { x1: 0.5, x2: 1.5, x_m: 1.0, outer: 1e10, drho: 0.01, n_bulk: 600 };
    let mesh = generate_mesh(&spec)?;
    let inside = mesh.nodes.iter().filter(|x| **x >= spec.x1 && **x <= spec.x2).count();
    println!("nodes {}  in window {}  min spacing {:.3e}  last {:.6e}", mesh.len(), inside, mesh.min_spacing(), mesh.nodes[mesh.len() - 1]);

    let narrow = MeshSpec { x1: 0.9, x2: 1.1, x_m: 1.0, ..spec };
    let fine = generate_mesh(&narrow)?;
    let f: Vec<f64> = mesh.nodes.iter().map(|x| -x / (1.0 + x * x).powi(2)).collect();
    let g = remesh(&mesh.nodes, &f, &fine.nodes, Parity::Odd)?;
    let err = fine
        .nodes
        .iter()
        .zip(&g)
        .filter(|(x, _)| **x < 100.0)
        .map(|(x, v)| (v + x / (1.0 + x * x).powi(2)).abs())
        .fold(0.0, f64::max);
    println!("remeshed onto {} nodes, max interpolation error {err:.3e}", fine.len());
    Ok(())
}

//! Graded meshes on the half-line `X >= 0`.
//!
//! Nodes are the images of a uniform computational grid `rho_j = j * drho`
//! under
//!
//! ```text
//! X(rho) = X_m (1 - cosh rho) + sqrt(c + X_m^2) sinh rho,
//! ```
//!
//! which is densest at `X_m` (spacing `sqrt(c) * drho`) and grows
//! exponentially far away. `c` is tuned so that `n_bulk` nodes fall inside the
//! peak window `[X_1, X_2]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spline::Spline;

/// Parameters defining a graded mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    /// Left end of the refined window.
    pub x1: f64,
    /// Right end of the refined window.
    pub x2: f64,
    /// Focus point where the mesh is densest.
    pub x_m: f64,
    /// Outer truncation `X_max`.
    pub outer: f64,
    /// Computational step.
    pub drho: f64,
    /// Number of nodes to place inside `[x1, x2]`.
    pub n_bulk: usize,
}

impl Default for MeshSpec {
    fn default() -> Self {
        Self { x1: 0.99, x2: 1.01, x_m: 1.0, outer: 1e10, drho: 0.01, n_bulk: 600 }
    }
}

impl MeshSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.x1.is_finite()
            && self.x2.is_finite()
            && self.x_m.is_finite()
            && self.outer.is_finite()
            && 0.0 < self.x1
            && self.x1 < self.x2
            && self.x1 <= self.x_m
            && self.x_m <= self.x2
            && self.x2 < self.outer
            && self.drho > 0.0
            && self.n_bulk >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::Mesh(format!("{self:?}")))
        }
    }
}

/// The sinh/cosh map for a given focus point and concentration parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshMap {
    pub x_m: f64,
    pub c: f64,
}

impl MeshMap {
    fn s(&self) -> f64 {
        (self.c + self.x_m * self.x_m).sqrt()
    }

    pub fn x(&self, rho: f64) -> f64 {
        self.x_m * (1.0 - rho.cosh()) + self.s() * rho.sinh()
    }

    pub fn dx_drho(&self, rho: f64) -> f64 {
        -self.x_m * rho.sinh() + self.s() * rho.cosh()
    }

    /// Inverse map.
    pub fn rho(&self, x: f64) -> f64 {
        let s = self.s();
        // s - X_m written without cancellation
        let s_minus = self.c / (s + self.x_m);
        let d = x - self.x_m;
        ((d + (d * d + self.c).sqrt()) / s_minus).ln()
    }
}

/// Number of computational steps between `x1` and `x2` for a given `c`.
fn bulk_count(x_m: f64, c: f64, x1: f64, x2: f64, drho: f64) -> f64 {
    let map = MeshMap { x_m, c };
    (map.rho(x2) - map.rho(x1)) / drho
}

/// A generated mesh: nodes `X_j = X(j * drho)` on `[0, outer]`, the last one
/// placed at `outer`.
///
/// `drho` is the requested step adjusted slightly so that `x_m` is a node.
#[derive(Debug, Clone)]
pub struct AdaptiveMesh {
    pub spec: MeshSpec,
    pub map: MeshMap,
    pub drho: f64,
    pub nodes: Vec<f64>,
    pub dx_drho: Vec<f64>,
}

impl AdaptiveMesh {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Smallest spacing of the mesh.
    pub fn min_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Width of the refined window at generation time.
    pub fn window_width(&self) -> f64 {
        self.spec.x2 - self.spec.x1
    }
}

/// Generate the mesh for `spec`.
pub fn generate_mesh(spec: &MeshSpec) -> Result<AdaptiveMesh> {
    spec.validate()?;
    let target = spec.n_bulk as f64;
    // bulk_count decreases monotonically in c; bisect on ln c.
    let (mut lo, mut hi) = (-80.0_f64, 80.0_f64);
    let count = |lc: f64| bulk_count(spec.x_m, lc.exp(), spec.x1, spec.x2, spec.drho);
    if count(hi) > target || count(lo) < target {
        return Err(Error::Mesh(format!(
            "cannot place {} nodes in [{}, {}] with drho = {}",
            spec.n_bulk, spec.x1, spec.x2, spec.drho
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let map = MeshMap { x_m: spec.x_m, c: (0.5 * (lo + hi)).exp() };
    let rho_m = map.rho(spec.x_m);
    let j_m = (rho_m / spec.drho).round().max(1.0);
    let drho = rho_m / j_m;
    let rho_max = map.rho(spec.outer);
    let n = (rho_max / drho).ceil() as usize + 1;
    let mut rho: Vec<f64> = (0..n).map(|j| j as f64 * drho).collect();
    if n > j_m as usize + 2 {
        // the last cell is shortened so the mesh ends exactly at `outer`
        rho[n - 1] = rho_max;
    }
    let mut nodes: Vec<f64> = rho.iter().map(|&r| map.x(r)).collect();
    nodes[j_m as usize] = spec.x_m;
    if n > j_m as usize + 2 {
        nodes[n - 1] = spec.outer;
    }
    let dx_drho = rho.iter().map(|&r| map.dx_drho(r)).collect();
    if nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Mesh("generated nodes are not increasing".into()));
    }
    Ok(AdaptiveMesh { spec: *spec, map, drho, nodes, dx_drho })
}

/// Whether the peak has moved or narrowed enough to warrant a new mesh.
///
/// `x_m` and `width` describe the current peak; they are compared with the
/// window the mesh was generated for.
pub fn should_remesh(mesh: &AdaptiveMesh, x_m: f64, width: f64) -> bool {
    let w0 = mesh.window_width();
    (x_m - mesh.spec.x_m).abs() > 0.25 * w0 || width < 0.5 * w0
}

/// How the evolved values on `X >= 0` continue to `X < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    /// Identically zero for `X < 0`.
    Zero,
}

/// Spline through evolved values, continued to negative `X` by `parity` so
/// that interpolation near the origin sees both sides.
pub fn symmetric_spline(nodes: &[f64], values: &[f64], parity: Parity) -> Result<Spline> {
    let n = nodes.len();
    let mirrored = n.min(8);
    let mut x = Vec::with_capacity(n + mirrored);
    let mut f = Vec::with_capacity(n + mirrored);
    for j in (1..mirrored).rev() {
        x.push(-nodes[j]);
        f.push(match parity {
            Parity::Odd => -values[j],
            Parity::Even => values[j],
            Parity::Zero => 0.0,
        });
    }
    x.extend_from_slice(nodes);
    f.extend_from_slice(values);
    Spline::natural(&x, &f)
}

/// Interpolate values from one mesh onto another. Points beyond the old
/// outer end take the value at the old outer end.
pub fn remesh(old_nodes: &[f64], old_values: &[f64], new_nodes: &[f64], parity: Parity) -> Result<Vec<f64>> {
    let sp = symmetric_spline(old_nodes, old_values, parity)?;
    let last = *old_nodes.last().unwrap_or(&0.0);
    let tail = *old_values.last().unwrap_or(&0.0);
    Ok(new_nodes
        .iter()
        .map(|&x| if x > last { tail } else { sp.eval(x) })
        .collect())
}

/// Uniform pad of negative nodes used for half-line problems.
pub fn half_line_pad(extent: f64, spacing: f64) -> Vec<f64> {
    let n = (extent / spacing).round() as usize;
    (1..=n).rev().map(|i| -(i as f64) * spacing).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn focus_point_is_a_node() {
        for x_m in [0.37, 1.0, 2.5] {
            let spec = MeshSpec { x1: 0.5 * x_m, x2: 1.5 * x_m, x_m, n_bulk: 80, outer: 1e6, drho: 0.02 };
            let mesh = generate_mesh(&spec).unwrap();
            assert!(mesh.nodes.contains(&x_m));
            assert!((mesh.drho / 0.02 - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn bulk_window_gets_requested_nodes() {
        let spec = MeshSpec { n_bulk: 100, outer: 1e6, ..MeshSpec::default() };
        let mesh = generate_mesh(&spec).unwrap();
        let inside = mesh.nodes.iter().filter(|&&x| x >= spec.x1 && x <= spec.x2).count();
        assert!((inside as i64 - 100).abs() <= 1, "{inside}");
        assert_eq!(mesh.nodes[0], 0.0);
        assert_eq!(*mesh.nodes.last().unwrap(), spec.outer);
        let expected = mesh.map.c.sqrt() * mesh.drho;
        assert!((mesh.min_spacing() - expected).abs() < 1e-3 * expected);
    }

    #[test]
    fn inverse_map_round_trips() {
        let map = MeshMap { x_m: 1.0, c: 1.7e-5 };
        for &x in &[0.0, 0.5, 0.99, 1.0, 1.3, 1e3, 1e9] {
            let back = map.x(map.rho(x));
            assert!((back - x).abs() <= 1e-9 * x.max(1.0), "{x} -> {back}");
        }
    }

    #[test]
    fn remesh_triggers() {
        let spec = MeshSpec { x1: 0.9, x2: 1.1, x_m: 1.0, outer: 1e4, drho: 0.02, n_bulk: 20 };
        let mesh = generate_mesh(&spec).unwrap();
        assert!(!should_remesh(&mesh, 1.01, 0.18));
        assert!(should_remesh(&mesh, 1.06, 0.2));
        assert!(should_remesh(&mesh, 1.0, 0.09));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad = MeshSpec { x1: 1.2, ..MeshSpec::default() };
        assert!(generate_mesh(&bad).is_err());
        let bad = MeshSpec { drho: 0.0, ..MeshSpec::default() };
        assert!(generate_mesh(&bad).is_err());
    }
}

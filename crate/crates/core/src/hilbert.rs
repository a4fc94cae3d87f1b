//! Hilbert transform and log-potential velocity of natural cubic splines.
//!
//! Two entry points are provided. The free functions ([`hilbert_at_nodes`],
//! [`hilbert_at`], [`velocity_at_nodes`]) assemble the kernel sums directly
//! and are meant for one-off evaluations. [`DenseOperator`] folds the spline
//! slope solve and an optional odd/even reflection into two dense matrices so
//! that repeated evaluations on a fixed mesh cost one matrix-vector product.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{
    hilbert_p_at_node, hilbert_q_at_node, kernel_a, kernel_b, kernel_c, kernel_d,
    potential_p_at_node_side, potential_q_at_node_side,
};
use crate::spline::{check_grid, SlopeSystem};

/// Per-basis contributions at one target point.
struct BasisRows<'a> {
    hp: Option<&'a mut [f64]>,
    hq: Option<&'a mut [f64]>,
    lp: Option<&'a mut [f64]>,
    lq: Option<&'a mut [f64]>,
}

/// Fill the contributions of every `P_i`, `Q_i` at the point `t`.
///
/// `node` must be `Some(j)` iff `t == x[j]`. At the two outermost nodes the
/// Hilbert self-term is log-divergent for a one-sided basis function; there the
/// spline is treated as reflected evenly across the end, which gives the finite
/// principal value `H(P) = 0`, `H(Q) = -2h/(3 pi)`.
fn fill_rows(x: &[f64], t: f64, node: Option<usize>, rows: &mut BasisRows<'_>) {
    let n = x.len();
    for i in 0..n {
        let dl = (i > 0).then(|| x[i] - x[i - 1]);
        let dr = (i + 1 < n).then(|| x[i + 1] - x[i]);
        if node == Some(i) {
            if rows.hp.is_some() || rows.hq.is_some() {
                let (a, b) = match (dl, dr) {
                    (Some(a), Some(b)) => (a, b),
                    (Some(a), None) => (a, a),
                    (None, Some(b)) => (b, b),
                    (None, None) => unreachable!(),
                };
                if let Some(r) = rows.hp.as_deref_mut() {
                    r[i] = hilbert_p_at_node(a, b);
                }
                if let Some(r) = rows.hq.as_deref_mut() {
                    r[i] = hilbert_q_at_node(a, b);
                }
            }
            if let Some(r) = rows.lp.as_deref_mut() {
                r[i] = dl.map_or(0.0, potential_p_at_node_side) + dr.map_or(0.0, potential_p_at_node_side);
            }
            if let Some(r) = rows.lq.as_deref_mut() {
                r[i] = dl.map_or(0.0, |d| potential_q_at_node_side(d, true))
                    + dr.map_or(0.0, |d| potential_q_at_node_side(d, false));
            }
            continue;
        }
        let dx = t - x[i];
        let l = dl.map(|d| (-d / dx, d));
        let r = dr.map(|d| (d / dx, d));
        if let Some(row) = rows.hp.as_deref_mut() {
            row[i] = l.map_or(0.0, |(s, _)| kernel_a(s)) - r.map_or(0.0, |(s, _)| kernel_a(s));
        }
        if let Some(row) = rows.hq.as_deref_mut() {
            row[i] = l.map_or(0.0, |(s, d)| -d * kernel_b(s)) - r.map_or(0.0, |(s, d)| d * kernel_b(s));
        }
        if let Some(row) = rows.lp.as_deref_mut() {
            row[i] = l.map_or(0.0, |(s, d)| kernel_c(d, s)) + r.map_or(0.0, |(s, d)| kernel_c(d, s));
        }
        if let Some(row) = rows.lq.as_deref_mut() {
            row[i] = l.map_or(0.0, |(s, d)| kernel_d(d, s)) - r.map_or(0.0, |(s, d)| kernel_d(d, s));
        }
    }
}

fn node_index(x: &[f64], t: f64) -> Option<usize> {
    let p = x.partition_point(|&v| v < t);
    (p < x.len() && x[p] == t).then_some(p)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn check_values(x: &[f64], f: &[f64]) -> Result<()> {
    check_grid(x)?;
    if x.len() != f.len() {
        return Err(Error::Grid(format!("{} nodes but {} values", x.len(), f.len())));
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::Grid("non-finite sample value".into()));
    }
    Ok(())
}

/// Hilbert transform of the natural spline through `(x, f)`, at arbitrary points.
pub fn hilbert_at(x: &[f64], f: &[f64], points: &[f64]) -> Result<Vec<f64>> {
    check_values(x, f)?;
    let m = SlopeSystem::new(x)?.slopes(f);
    let n = x.len();
    Ok(points
        .iter()
        .map(|&t| {
            let mut hp = vec![0.0; n];
            let mut hq = vec![0.0; n];
            let mut rows = BasisRows { hp: Some(&mut hp), hq: Some(&mut hq), lp: None, lq: None };
            fill_rows(x, t, node_index(x, t), &mut rows);
            dot(&hp, f) + dot(&hq, &m)
        })
        .collect())
}

/// Hilbert transform of the natural spline through `(x, f)`, at the nodes.
pub fn hilbert_at_nodes(x: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    hilbert_at(x, f, x)
}

/// `(1/pi) int ln|t - y| f(y) dy` for the natural spline through `(x, f)`.
pub fn log_potential_at(x: &[f64], f: &[f64], points: &[f64]) -> Result<Vec<f64>> {
    check_values(x, f)?;
    let m = SlopeSystem::new(x)?.slopes(f);
    let n = x.len();
    Ok(points
        .iter()
        .map(|&t| {
            let mut lp = vec![0.0; n];
            let mut lq = vec![0.0; n];
            let mut rows = BasisRows { hp: None, hq: None, lp: Some(&mut lp), lq: Some(&mut lq) };
            fill_rows(x, t, node_index(x, t), &mut rows);
            dot(&lp, f) + dot(&lq, &m)
        })
        .collect())
}

/// Velocity `U` with `U_X = H(f)` and `U(0) = 0`, at the nodes.
pub fn velocity_at_nodes(x: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    let mut pts = x.to_vec();
    pts.push(0.0);
    let mut u = log_potential_at(x, f, &pts)?;
    let u0 = u.pop().unwrap_or(0.0);
    u.iter_mut().for_each(|v| *v -= u0);
    Ok(u)
}

/// How the unknowns on the evolved half-grid extend to the full grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Folding {
    /// No reflection; the evolved nodes are the whole grid.
    Plain,
    /// `f(-x) = -f(x)`; evolved nodes are `0 = x_0 < x_1 < ...`.
    Odd,
    /// `f(-x) = f(x)`; evolved nodes are `0 = x_0 < x_1 < ...`.
    Even,
    /// `f = 0` on a fixed pad of negative nodes; evolved nodes start at 0.
    HalfLinePad,
}

/// Dense Hilbert and velocity matrices for a fixed mesh.
///
/// `hilbert()` returns `H(f)` and `velocity()` returns `U` (with `U(0) = 0`)
/// at the evolved nodes, both linear in the evolved values.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    nodes: Vec<f64>,
    full: Vec<f64>,
    folding: Folding,
    h: Vec<f64>,
    u: Vec<f64>,
}

impl DenseOperator {
    /// Build the operator. For the reflected foldings `nodes[0]` must be 0;
    /// `pad` lists the negative nodes used by [`Folding::HalfLinePad`].
    pub fn build(nodes: &[f64], folding: Folding, pad: &[f64]) -> Result<Self> {
        check_grid(nodes)?;
        let n = nodes.len();
        if folding != Folding::Plain && nodes[0] != 0.0 {
            return Err(Error::Grid("a folded operator needs x_0 = 0".into()));
        }
        // full grid and, per full node, the evolved index and sign it copies
        let (full, source): (Vec<f64>, Vec<Option<(usize, f64)>>) = match folding {
            Folding::Plain => (nodes.to_vec(), (0..n).map(|e| Some((e, 1.0))).collect()),
            Folding::Odd | Folding::Even => {
                let sign = if folding == Folding::Odd { -1.0 } else { 1.0 };
                let mut full = Vec::with_capacity(2 * n - 1);
                let mut src = Vec::with_capacity(2 * n - 1);
                for e in (1..n).rev() {
                    full.push(-nodes[e]);
                    src.push(Some((e, sign)));
                }
                for (e, &v) in nodes.iter().enumerate() {
                    full.push(v);
                    src.push(Some((e, 1.0)));
                }
                (full, src)
            }
            Folding::HalfLinePad => {
                if pad.iter().any(|&p| p >= 0.0) {
                    return Err(Error::Grid("pad nodes must be negative".into()));
                }
                let mut full = pad.to_vec();
                let mut src = vec![None; pad.len()];
                full.extend_from_slice(nodes);
                src.extend((0..n).map(|e| Some((e, 1.0))));
                (full, src)
            }
        };
        check_grid(&full)?;
        let offset = full.len() - n;
        let origin = node_index(&full, 0.0);
        let sys = SlopeSystem::new(&full)?;
        let g = full.len();

        let build_row = |t: f64, node: Option<usize>| -> (Vec<f64>, Vec<f64>) {
            let mut hp = vec![0.0; g];
            let mut hq = vec![0.0; g];
            let mut lp = vec![0.0; g];
            let mut lq = vec![0.0; g];
            let mut rows = BasisRows {
                hp: Some(&mut hp),
                hq: Some(&mut hq),
                lp: Some(&mut lp),
                lq: Some(&mut lq),
            };
            fill_rows(&full, t, node, &mut rows);
            let mut tmp = vec![0.0; g];
            for (vals, slopes) in [(&mut hp, &mut hq), (&mut lp, &mut lq)] {
                sys.solve_in_place(slopes);
                sys.rhs_transpose(slopes, &mut tmp);
                vals.iter_mut().zip(&tmp).for_each(|(v, t)| *v += t);
            }
            let fold = |row: &[f64]| {
                let mut out = vec![0.0; n];
                for (gi, s) in source.iter().enumerate() {
                    if let Some((e, w)) = s {
                        out[*e] += w * row[gi];
                    }
                }
                out
            };
            (fold(&hp), fold(&lp))
        };

        let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
            .into_par_iter()
            .map(|e| build_row(full[offset + e], Some(offset + e)))
            .collect();
        let u_origin = match origin {
            Some(o) if o >= offset => rows[o - offset].1.clone(),
            o => build_row(0.0, o).1,
        };
        let mut h = Vec::with_capacity(n * n);
        let mut u = Vec::with_capacity(n * n);
        for (hr, ur) in rows {
            h.extend_from_slice(&hr);
            u.extend(ur.iter().zip(&u_origin).map(|(a, b)| a - b));
        }
        Ok(Self { nodes: nodes.to_vec(), full, folding, h, u })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// The full grid the spline lives on (including reflected or pad nodes).
    pub fn full_grid(&self) -> &[f64] {
        &self.full
    }

    pub fn folding(&self) -> Folding {
        self.folding
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn apply(mat: &[f64], n: usize, f: &[f64], out: &mut [f64]) {
        out.par_iter_mut()
            .zip(mat.par_chunks(n))
            .for_each(|(o, row)| *o = dot(row, f));
    }

    /// `H(f)` at the evolved nodes.
    pub fn hilbert_into(&self, f: &[f64], out: &mut [f64]) {
        Self::apply(&self.h, self.nodes.len(), f, out);
    }

    /// `U` at the evolved nodes.
    pub fn velocity_into(&self, f: &[f64], out: &mut [f64]) {
        Self::apply(&self.u, self.nodes.len(), f, out);
    }

    pub fn hilbert(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        self.hilbert_into(f, &mut out);
        out
    }

    pub fn velocity(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        self.velocity_into(f, &mut out);
        out
    }

    /// Row `j` of the Hilbert matrix: `H(f)(x_j) = row . f`.
    pub fn hilbert_row(&self, j: usize) -> &[f64] {
        let n = self.nodes.len();
        &self.h[j * n..(j + 1) * n]
    }

    /// Row `j` of the velocity matrix.
    pub fn velocity_row(&self, j: usize) -> &[f64] {
        let n = self.nodes.len();
        &self.u[j * n..(j + 1) * n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graded(n: usize, scale: f64, stretch: f64) -> Vec<f64> {
        // symmetric sinh-graded grid on [-L, L]
        (0..=2 * n)
            .map(|i| {
                let r = (i as f64 - n as f64) / n as f64 * stretch;
                scale * r.sinh()
            })
            .collect()
    }

    #[test]
    fn lorentzian_is_reproduced() {
        let x = graded(400, 1.0, 9.0);
        let f: Vec<f64> = x.iter().map(|t| 1.0 / (1.0 + t * t)).collect();
        let h = hilbert_at_nodes(&x, &f).unwrap();
        let u = velocity_at_nodes(&x, &f).unwrap();
        for (i, &t) in x.iter().enumerate() {
            if t.abs() <= 10.0 {
                assert!((h[i] - t / (1.0 + t * t)).abs() < 1e-5, "H at {t}: {}", h[i]);
                assert!((u[i] - 0.5 * (1.0 + t * t).ln()).abs() < 1e-4, "U at {t}");
            }
        }
    }

    #[test]
    fn dense_operator_matches_direct_assembly() {
        let half: Vec<f64> = (0..60).map(|i| (i as f64 * 0.1).sinh()).collect();
        let f_half: Vec<f64> = half.iter().map(|t| -t / (1.0 + t * t).powi(2)).collect();
        let op = DenseOperator::build(&half, Folding::Odd, &[]).unwrap();
        let full = op.full_grid().to_vec();
        let f_full: Vec<f64> = full.iter().map(|t| -t / (1.0 + t * t).powi(2)).collect();
        let h_direct = hilbert_at_nodes(&full, &f_full).unwrap();
        let u_direct = velocity_at_nodes(&full, &f_full).unwrap();
        let h = op.hilbert(&f_half);
        let u = op.velocity(&f_half);
        let off = full.len() - half.len();
        for e in 0..half.len() {
            assert!((h[e] - h_direct[off + e]).abs() < 1e-12, "H row {e}");
            assert!((u[e] - u_direct[off + e]).abs() < 1e-11, "U row {e}");
        }
    }

    #[test]
    fn pad_operator_matches_direct_assembly() {
        let half: Vec<f64> = (0..50).map(|i| (i as f64 * 0.12).sinh()).collect();
        let pad: Vec<f64> = (1..=20).rev().map(|i| -0.5 * i as f64).collect();
        let bump = |t: f64| if t > 0.0 { t * t * (-t).exp() } else { 0.0 };
        let op = DenseOperator::build(&half, Folding::HalfLinePad, &pad).unwrap();
        let full = op.full_grid().to_vec();
        let f_full: Vec<f64> = full.iter().map(|&t| bump(t)).collect();
        let f_half: Vec<f64> = half.iter().map(|&t| bump(t)).collect();
        let h_direct = hilbert_at_nodes(&full, &f_full).unwrap();
        let u_direct = velocity_at_nodes(&full, &f_full).unwrap();
        let (h, u) = (op.hilbert(&f_half), op.velocity(&f_half));
        for e in 0..half.len() {
            assert!((h[e] - h_direct[pad.len() + e]).abs() < 1e-12);
            assert!((u[e] - u_direct[pad.len() + e]).abs() < 1e-11);
        }
        assert_eq!(u[0], 0.0);
    }

    #[test]
    fn off_node_evaluation_is_continuous() {
        let x = graded(50, 1.0, 4.0);
        let f: Vec<f64> = x.iter().map(|t| (-t * t).exp()).collect();
        let at = hilbert_at_nodes(&x, &f).unwrap();
        let near = hilbert_at(&x, &f, &[x[37] + 1e-9, x[37] - 1e-9]).unwrap();
        assert!((near[0] - at[37]).abs() < 1e-6);
        assert!((near[1] - at[37]).abs() < 1e-6);
    }
}

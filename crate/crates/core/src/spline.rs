//! Natural cubic splines in Hermite (value + slope) form.

use crate::error::{Error, Result};

/// Factorized tridiagonal system for the natural-spline slopes on a fixed grid.
///
/// The system is symmetric once the two end rows are divided by the end
/// interval lengths, which is what makes the transposed solves needed by the
/// dense operators free.
#[derive(Debug, Clone)]
pub struct SlopeSystem {
    inv_h: Vec<f64>,
    // Thomas factorization: modified super-diagonal and pivots.
    c_prime: Vec<f64>,
    pivot: Vec<f64>,
}

impl SlopeSystem {
    pub fn new(x: &[f64]) -> Result<Self> {
        check_grid(x)?;
        let n = x.len();
        let inv_h: Vec<f64> = x.windows(2).map(|w| 1.0 / (w[1] - w[0])).collect();
        let mut diag = vec![0.0; n];
        for i in 0..n {
            let left = if i > 0 { inv_h[i - 1] } else { 0.0 };
            let right = if i + 1 < n { inv_h[i] } else { 0.0 };
            diag[i] = 2.0 * (left + right);
        }
        // off-diagonal between i and i+1 is inv_h[i]
        let mut c_prime = vec![0.0; n];
        let mut pivot = vec![0.0; n];
        pivot[0] = diag[0];
        for i in 0..n - 1 {
            c_prime[i] = inv_h[i] / pivot[i];
            pivot[i + 1] = diag[i + 1] - inv_h[i] * c_prime[i];
        }
        Ok(Self { inv_h, c_prime, pivot })
    }

    pub fn len(&self) -> usize {
        self.pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivot.is_empty()
    }

    /// Solve `T y = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        b[0] /= self.pivot[0];
        for i in 1..n {
            b[i] = (b[i] - self.inv_h[i - 1] * b[i - 1]) / self.pivot[i];
        }
        for i in (0..n - 1).rev() {
            b[i] -= self.c_prime[i] * b[i + 1];
        }
    }

    /// Right-hand side `B f` of the slope system.
    pub fn rhs(&self, f: &[f64], out: &mut [f64]) {
        let n = f.len();
        for i in 0..n {
            let mut v = 0.0;
            if i > 0 {
                let ih = self.inv_h[i - 1];
                v += 3.0 * (f[i] - f[i - 1]) * ih * ih;
            }
            if i + 1 < n {
                let ih = self.inv_h[i];
                v += 3.0 * (f[i + 1] - f[i]) * ih * ih;
            }
            out[i] = v;
        }
    }

    /// `B^T w`, used to pull a functional of the slopes back onto the values.
    pub fn rhs_transpose(&self, w: &[f64], out: &mut [f64]) {
        let n = w.len();
        for j in 0..n {
            let mut v = 0.0;
            if j > 0 {
                let ih = self.inv_h[j - 1];
                v += 3.0 * ih * ih * (w[j - 1] + w[j]);
            }
            if j + 1 < n {
                let ih = self.inv_h[j];
                v -= 3.0 * ih * ih * (w[j] + w[j + 1]);
            }
            out[j] = v;
        }
    }

    /// Weights `w` such that the natural spline through `(x, f)` satisfies
    /// `S(t) = w . f` (`derivative = false`) or `S'(t) = w . f`.
    pub fn functional(&self, x: &[f64], t: f64, derivative: bool) -> Vec<f64> {
        let n = x.len();
        let i = match x.partition_point(|&xi| xi <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = x[i + 1] - x[i];
        let u = (t - x[i]) / h;
        let u2 = u * u;
        let (c0, c1, s0, s1) = if derivative {
            (
                (6.0 * u2 - 6.0 * u) / h,
                (-6.0 * u2 + 6.0 * u) / h,
                3.0 * u2 - 4.0 * u + 1.0,
                3.0 * u2 - 2.0 * u,
            )
        } else {
            let u3 = u2 * u;
            (
                2.0 * u3 - 3.0 * u2 + 1.0,
                -2.0 * u3 + 3.0 * u2,
                h * (u3 - 2.0 * u2 + u),
                h * (u3 - u2),
            )
        };
        let mut q = vec![0.0; n];
        q[i] = s0;
        q[i + 1] = s1;
        self.solve_in_place(&mut q);
        let mut w = vec![0.0; n];
        self.rhs_transpose(&q, &mut w);
        w[i] += c0;
        w[i + 1] += c1;
        w
    }

    /// Natural-spline slopes for the values `f`.
    pub fn slopes(&self, f: &[f64]) -> Vec<f64> {
        let mut m = vec![0.0; f.len()];
        self.rhs(f, &mut m);
        self.solve_in_place(&mut m);
        m
    }
}

pub(crate) fn check_grid(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::Grid("a grid needs at least two nodes".into()));
    }
    for (i, w) in x.windows(2).enumerate() {
        if !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::Grid(format!(
                "grid is not strictly increasing at index {i}: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// A natural cubic spline through `(x_i, f_i)`.
#[derive(Debug, Clone)]
pub struct Spline {
    x: Vec<f64>,
    f: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    /// Natural spline (zero second derivative at both ends).
    pub fn natural(x: &[f64], f: &[f64]) -> Result<Self> {
        if x.len() != f.len() {
            return Err(Error::Grid(format!(
                "{} nodes but {} values",
                x.len(),
                f.len()
            )));
        }
        let sys = SlopeSystem::new(x)?;
        let m = sys.slopes(f);
        Ok(Self { x: x.to_vec(), f: f.to_vec(), m })
    }

    /// Spline from precomputed slopes.
    pub fn from_slopes(x: Vec<f64>, f: Vec<f64>, m: Vec<f64>) -> Self {
        Self { x, f, m }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.f
    }

    pub fn slopes(&self) -> &[f64] {
        &self.m
    }

    /// Index `i` of the interval `[x_i, x_{i+1}]` containing `t` (clamped).
    pub fn interval(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        }
    }

    fn local(&self, t: f64) -> (usize, f64, f64) {
        let i = self.interval(t);
        let h = self.x[i + 1] - self.x[i];
        (i, h, (t - self.x[i]) / h)
    }

    /// Value at `t`; outside the grid the end cubic is extrapolated.
    pub fn eval(&self, t: f64) -> f64 {
        let (i, h, u) = self.local(t);
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        h00 * self.f[i] + h10 * h * self.m[i] + h01 * self.f[i + 1] + h11 * h * self.m[i + 1]
    }

    /// First derivative at `t`.
    pub fn deriv(&self, t: f64) -> f64 {
        let (i, h, u) = self.local(t);
        let u2 = u * u;
        let d00 = (6.0 * u2 - 6.0 * u) / h;
        let d10 = 3.0 * u2 - 4.0 * u + 1.0;
        let d01 = (-6.0 * u2 + 6.0 * u) / h;
        let d11 = 3.0 * u2 - 2.0 * u;
        d00 * self.f[i] + d10 * self.m[i] + d01 * self.f[i + 1] + d11 * self.m[i + 1]
    }

    /// Second derivative at `t` (piecewise linear).
    pub fn second_deriv(&self, t: f64) -> f64 {
        let (i, h, u) = self.local(t);
        let e00 = (12.0 * u - 6.0) / (h * h);
        let e10 = (6.0 * u - 4.0) / h;
        let e01 = (-12.0 * u + 6.0) / (h * h);
        let e11 = (6.0 * u - 2.0) / h;
        e00 * self.f[i] + e10 * self.m[i] + e01 * self.f[i + 1] + e11 * self.m[i + 1]
    }

    /// Exact integral of the spline over `[x_0, x_n]`.
    pub fn integral(&self) -> f64 {
        self.x
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let h = w[1] - w[0];
                h * (self.f[i] + self.f[i + 1]) / 2.0 + h * h * (self.m[i] - self.m[i + 1]) / 12.0
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_end_conditions_hold() {
        let x: Vec<f64> = (0..40).map(|i| (i as f64 * 0.13).powf(1.3)).collect();
        let f: Vec<f64> = x.iter().map(|t| (3.0 * t).sin() + t * t).collect();
        let s = Spline::natural(&x, &f).unwrap();
        let scale = s.second_deriv(x[10]).abs().max(1.0);
        assert!(s.second_deriv(x[0]).abs() < 1e-10 * scale);
        assert!(s.second_deriv(*x.last().unwrap()).abs() < 1e-10 * scale);
    }

    #[test]
    fn interpolates_and_is_c2() {
        let x: Vec<f64> = (0..25).map(|i| i as f64 * 0.2 + (i as f64 * 0.7).sin() * 0.05).collect();
        let f: Vec<f64> = x.iter().map(|t| t.exp() * 0.1).collect();
        let s = Spline::natural(&x, &f).unwrap();
        for i in 1..x.len() - 1 {
            assert!((s.eval(x[i]) - f[i]).abs() < 1e-13);
            let left = s.second_deriv(x[i] - 1e-12);
            let right = s.second_deriv(x[i] + 1e-12);
            assert!((left - right).abs() < 1e-6 * left.abs().max(1.0), "node {i}");
        }
    }

    #[test]
    fn transpose_is_consistent() {
        let x: Vec<f64> = vec![0.0, 0.1, 0.5, 0.6, 2.0, 7.0];
        let sys = SlopeSystem::new(&x).unwrap();
        let f = [1.0, -2.0, 0.5, 3.0, 1.0, 0.0];
        let w = [0.3, 0.1, -0.7, 0.2, 1.0, 0.4];
        let mut bf = vec![0.0; 6];
        sys.rhs(&f, &mut bf);
        let mut btw = vec![0.0; 6];
        sys.rhs_transpose(&w, &mut btw);
        let lhs: f64 = w.iter().zip(&bf).map(|(a, b)| a * b).sum();
        let rhs: f64 = f.iter().zip(&btw).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn functional_weights_reproduce_evaluation() {
        let x: Vec<f64> = (0..30).map(|i| (i as f64 * 0.1).sinh()).collect();
        let f: Vec<f64> = x.iter().map(|t| (-t).exp() * t.sin()).collect();
        let s = Spline::natural(&x, &f).unwrap();
        let sys = SlopeSystem::new(&x).unwrap();
        for &t in &[0.05, 1.0, 2.7, x[12]] {
            let wv = sys.functional(&x, t, false);
            let wd = sys.functional(&x, t, true);
            let v: f64 = wv.iter().zip(&f).map(|(a, b)| a * b).sum();
            let d: f64 = wd.iter().zip(&f).map(|(a, b)| a * b).sum();
            assert!((v - s.eval(t)).abs() < 1e-13);
            assert!((d - s.deriv(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Spline::natural(&[0.0, 1.0, 1.0], &[0.0, 0.0, 0.0]).is_err());
        assert!(Spline::natural(&[0.0], &[0.0]).is_err());
        assert!(Spline::natural(&[0.0, 1.0], &[0.0]).is_err());
    }
}

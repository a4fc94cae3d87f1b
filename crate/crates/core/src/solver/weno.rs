//! Fifth-order WENO derivatives on a uniform computational grid.
//!
//! For each node both one-sided derivatives are returned: `minus` uses the
//! stencil biased to the left (upwind for positive advection speed) and `plus`
//! the one biased to the right. Where a stencil would leave the grid and no
//! ghost values are available, a third-order one-sided difference is used.

const EPS: f64 = 1e-6;

fn weno_combine(v1: f64, v2: f64, v3: f64, v4: f64, v5: f64) -> f64 {
    let p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    let p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    let p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    let s1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3).powi(2) + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3).powi(2);
    let s2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4).powi(2) + 0.25 * (v2 - v4).powi(2);
    let s3 = 13.0 / 12.0 * (v3 - 2.0 * v4 + v5).powi(2) + 0.25 * (3.0 * v3 - 4.0 * v4 + v5).powi(2);
    let a1 = 0.1 / (EPS + s1).powi(2);
    let a2 = 0.6 / (EPS + s2).powi(2);
    let a3 = 0.3 / (EPS + s3).powi(2);
    (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3)
}

/// Ghost values past the last node continuing the last two samples
/// geometrically, which on a grid with `X ~ e^rho` is a power-law tail.
/// Falls back to zero when the tail is not monotonically decaying.
pub fn geometric_tail(f: &[f64]) -> [f64; 3] {
    let n = f.len();
    let (a, b) = (f[n - 2], f[n - 1]);
    if a == 0.0 || b == 0.0 || a.signum() != b.signum() || b.abs() >= a.abs() {
        return [0.0; 3];
    }
    let q = b / a;
    [b * q, b * q * q, b * q * q * q]
}

/// Derivative at offset 0 of the cubic through the four points at `offsets`.
fn lagrange4(f: impl Fn(i64) -> f64, offsets: [i64; 4], h: f64) -> f64 {
    let mut d = 0.0;
    for k in 0..4 {
        let ok = offsets[k] as f64;
        let mut denom = 1.0;
        for m in 0..4 {
            if m != k {
                denom *= ok - offsets[m] as f64;
            }
        }
        let mut num = 0.0;
        for m in 0..4 {
            if m == k {
                continue;
            }
            let mut prod = 1.0;
            for l in 0..4 {
                if l != k && l != m {
                    prod *= -(offsets[l] as f64);
                }
            }
            num += prod;
        }
        d += num / denom * f(offsets[k]);
    }
    d / h
}

/// One-sided WENO5 derivatives of `f` with grid step `h`.
///
/// `left_ghosts` holds `f_{-1}, f_{-2}, f_{-3}` when the data continue to the
/// left of node 0 (by symmetry, say); `right_ghosts` holds `f_n, f_{n+1}, f_{n+2}`.
pub fn weno5_derivatives(
    f: &[f64],
    h: f64,
    left_ghosts: Option<[f64; 3]>,
    right_ghosts: Option<[f64; 3]>,
    minus: &mut [f64],
    plus: &mut [f64],
) {
    let n = f.len() as i64;
    let lo: i64 = if left_ghosts.is_some() { -3 } else { 0 };
    let hi: i64 = if right_ghosts.is_some() { n + 3 } else { n };
    let at = |i: i64| -> f64 {
        if i < 0 {
            left_ghosts.expect("ghost requested without ghosts")[(-i - 1) as usize]
        } else if i >= n {
            right_ghosts.expect("ghost requested without ghosts")[(i - n) as usize]
        } else {
            f[i as usize]
        }
    };
    let in_range = |a: i64, b: i64| a >= lo && b < hi;
    for i in 0..n {
        let diff = |j: i64| (at(j + 1) - at(j)) / h;
        let iu = i as usize;
        minus[iu] = if in_range(i - 3, i + 2) {
            weno_combine(diff(i - 3), diff(i - 2), diff(i - 1), diff(i), diff(i + 1))
        } else {
            let offs = if i - 3 >= lo { [-3, -2, -1, 0] } else { [0, 1, 2, 3] };
            let offs = if i - 2 >= lo && i + 1 < hi { [-2, -1, 0, 1] } else { offs };
            lagrange4(|o| at(i + o), offs, h)
        };
        plus[iu] = if in_range(i - 2, i + 3) {
            weno_combine(diff(i + 2), diff(i + 1), diff(i), diff(i - 1), diff(i - 2))
        } else {
            let offs = if i + 3 < hi { [0, 1, 2, 3] } else { [-3, -2, -1, 0] };
            let offs = if i > lo && i + 2 < hi { [-1, 0, 1, 2] } else { offs };
            lagrange4(|o| at(i + o), offs, h)
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quadratics_in_the_interior() {
        let h = 0.1;
        let f: Vec<f64> = (0..30).map(|i| {
            let x = i as f64 * h;
            2.0 + 3.0 * x - x * x
        }).collect();
        let mut m = vec![0.0; 30];
        let mut p = vec![0.0; 30];
        weno5_derivatives(&f, h, None, None, &mut m, &mut p);
        for i in 0..30 {
            let x = i as f64 * h;
            // third-order fallbacks are exact on quadratics as well
            assert!((m[i] - (3.0 - 2.0 * x)).abs() < 1e-11, "minus {i}");
            assert!((p[i] - (3.0 - 2.0 * x)).abs() < 1e-11, "plus {i}");
        }
    }

    #[test]
    fn fifth_order_on_smooth_data() {
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (2.0 * i as f64 * h).sin()).collect();
            let mut m = vec![0.0; n + 1];
            let mut p = vec![0.0; n + 1];
            weno5_derivatives(&f, h, None, None, &mut m, &mut p);
            (3..n - 3)
                .map(|i| (m[i] - 2.0 * (2.0 * i as f64 * h).cos()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(40), err(80));
        assert!((e1 / e2).log2() > 4.5, "order {}", (e1 / e2).log2());
    }
}

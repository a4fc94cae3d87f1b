//! Closed-form integrals of the cubic Hermite basis against the Hilbert and
//! logarithmic kernels.
//!
//! On a grid `x_0 < ... < x_n` a cubic spline is written as
//! `f = sum_i f_i P_i + f'_i Q_i`, where `P_i`, `Q_i` are the Hermite basis
//! functions supported on `[x_{i-1}, x_{i+1}]`. For a target point `x` the
//! contributions of `P_i`, `Q_i` depend on the ratios
//! `l = (x_{i-1} - x_i)/(x - x_i)` and `r = (x_{i+1} - x_i)/(x - x_i)`:
//!
//! ```text
//! H(P_i)(x) = A(l) - A(r)
//! H(Q_i)(x) = (x_{i-1} - x_i) B(l) - (x_{i+1} - x_i) B(r)
//! L(P_i)(x) = C(x_i - x_{i-1}, l) + C(x_{i+1} - x_i, r)
//! L(Q_i)(x) = D(x_i - x_{i-1}, l) - D(x_{i+1} - x_i, r)
//! ```
//!
//! with `H f = (1/pi) p.v. int f(y)/(x-y) dy` and `L f = (1/pi) int ln|x-y| f(y) dy`.
//!
//! For `|s| <= 1/2` the closed forms cancel catastrophically, so a truncated
//! power series (with fitted coefficients) is used instead.

use std::f64::consts::PI;

/// Which of the four kernel families to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// Hilbert transform of a value basis function.
    A,
    /// Hilbert transform of a slope basis function.
    B,
    /// Log potential of a value basis function.
    C,
    /// Log potential of a slope basis function.
    D,
}

/// Threshold below which the series branch is used.
pub const SERIES_THRESHOLD: f64 = 0.5;

const R1: [f64; 24] = [
    0.25,
    -0.04999999999999866,
    -0.03333333333338085,
    -0.02380952381002668,
    -0.01785714284817429,
    -0.01388888883280194,
    -0.0111111117723456,
    -0.00909091199993801,
    -0.007575732470825958,
    -0.006410171819766842,
    -0.005495065477419788,
    -0.004763424514296551,
    -0.0041587945938036,
    -0.003658683032021482,
    -0.003340203914467509,
    -0.00306305502520356,
    -0.002195292685440593,
    -0.001652974757186405,
    -0.003865944631093168,
    -0.004466133542538447,
    0.002210270189446115,
    0.003532901236598389,
    -0.006394622541761529,
    -0.006964811435003471,
];

const R2: [f64; 22] = [
    0.25,
    -0.5500000000000005,
    0.3166666666666673,
    -0.007142857142718389,
    -0.003571428571658581,
    -0.001984126996758493,
    -0.001190476169455116,
    -0.0007575752302443226,
    -0.0005050513541658974,
    -0.0003496624830794595,
    -0.0002497317240860826,
    -0.0001829814020322089,
    -0.0001376024384624091,
    -0.0001065281770442371,
    -0.00007978095495689995,
    -0.00005609995868764908,
    -0.00006109725530208673,
    -0.00007171425465849955,
    -6.388916781803325e-6,
    0.00003490077048616611,
    -0.00006504398511532267,
    -0.0000856727088008827,
];

fn horner(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
}

/// `ln|1 - s|`, with the convention that it multiplies a polynomial that
/// vanishes at `s = 1`, so the product is zero there.
fn log_one_minus(s: f64) -> f64 {
    if s == 1.0 {
        0.0
    } else {
        (1.0 - s).abs().ln()
    }
}

/// Hilbert kernel for value basis functions.
pub fn kernel_a(s: f64) -> f64 {
    if s.abs() <= SERIES_THRESHOLD {
        let s2 = s * s;
        let s3 = s2 * s;
        -(3.0 * s2 + 2.0 * s3) / (6.0 * PI) + (-2.0 * s + s2 + s3) / PI * horner(&R1, s)
    } else {
        let s3 = s * s * s;
        let poly = s3 - 3.0 * s + 2.0;
        let lg = if s == 1.0 { 0.0 } else { poly * log_one_minus(s) };
        (-5.0 * s3 - 12.0 * s * s + 12.0 * s + 6.0 * lg) / (6.0 * PI * s3)
    }
}

/// Hilbert kernel for slope basis functions.
pub fn kernel_b(s: f64) -> f64 {
    if s.abs() <= SERIES_THRESHOLD {
        (s - 2.0 * s * s) / (6.0 * PI) + (-s + s * s) / PI * horner(&R1, s)
    } else {
        let s3 = s * s * s;
        let lg = if s == 1.0 { 0.0 } else { (s - 1.0) * (s - 1.0) * log_one_minus(s) };
        (2.0 * s3 - 9.0 * s * s + 6.0 * s + 6.0 * lg) / (6.0 * PI * s3)
    }
}

/// Log-potential kernel for value basis functions; `d > 0` is the interval length.
pub fn kernel_c(d: f64, s: f64) -> f64 {
    let ln_ds = (d / s).abs().ln();
    if s.abs() <= SERIES_THRESHOLD {
        let s2 = s * s;
        d * (-3.0 + 2.0 * s2 - 4.0 * s2 * s + 12.0 * ln_ds) / (24.0 * PI)
            + d * (1.0 + s) / (2.0 * PI) * horner(&R2, s)
    } else {
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s2 * s2;
        let poly = 12.0 * s4 - 24.0 * s3 + 24.0 * s - 12.0;
        let lg = if s == 1.0 { 0.0 } else { poly * log_one_minus(s) };
        d * (-19.0 * s4 + 8.0 * s3 + 18.0 * s2 - 12.0 * s + lg + 12.0 * s4 * ln_ds)
            / (24.0 * PI * s4)
    }
}

/// Log-potential kernel for slope basis functions; `d > 0` is the interval length.
pub fn kernel_d(d: f64, s: f64) -> f64 {
    let ln_ds = (d / s).abs().ln();
    if s.abs() <= SERIES_THRESHOLD {
        let s2 = s * s;
        d * d * (9.0 - 12.0 * s + 6.0 * s2 + 4.0 * s2 * s - 12.0 * ln_ds) / (144.0 * PI)
            - d * d * (3.0 + s) / (12.0 * PI) * horner(&R2, s)
    } else {
        let s2 = s * s;
        let s3 = s2 * s;
        let s4 = s2 * s2;
        let poly = -12.0 * s4 + 72.0 * s2 - 96.0 * s + 36.0;
        let lg = if s == 1.0 { 0.0 } else { poly * log_one_minus(s) };
        d * d * (13.0 * s4 + 36.0 * s3 - 78.0 * s2 + 36.0 * s + lg - 12.0 * s4 * ln_ds)
            / (144.0 * PI * s4)
    }
}

/// Evaluate a kernel family. `d` is ignored for the Hilbert kernels.
pub fn kernel_eval(kind: KernelKind, d: f64, s: f64) -> f64 {
    match kind {
        KernelKind::A => kernel_a(s),
        KernelKind::B => kernel_b(s),
        KernelKind::C => kernel_c(d, s),
        KernelKind::D => kernel_d(d, s),
    }
}

/// `H(P_i)(x_i)` given the left and right interval lengths.
pub fn hilbert_p_at_node(d_left: f64, d_right: f64) -> f64 {
    (d_left / d_right).ln() / PI
}

/// `H(Q_i)(x_i)` given the left and right interval lengths.
pub fn hilbert_q_at_node(d_left: f64, d_right: f64) -> f64 {
    -(d_left + d_right) / (3.0 * PI)
}

/// Contribution of the left (`left = true`) or right interval of `P_i` to `L(P_i)(x_i)`.
pub fn potential_p_at_node_side(d: f64) -> f64 {
    (-19.0 * d + 12.0 * d * d.ln()) / (24.0 * PI)
}

/// Contribution of one interval of `Q_i` to `L(Q_i)(x_i)`; `left` selects the sign.
pub fn potential_q_at_node_side(d: f64, left: bool) -> f64 {
    let v = (13.0 * d * d - 12.0 * d * d * d.ln()) / (144.0 * PI);
    if left {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_agree_at_threshold() {
        for &s in &[0.5_f64, -0.5] {
            let lo = s * (1.0 - 1e-15);
            let hi = s * (1.0 + 1e-15);
            assert!((kernel_a(lo) - kernel_a(hi)).abs() < 1e-13, "A at {s}");
            assert!((kernel_b(lo) - kernel_b(hi)).abs() < 1e-13, "B at {s}");
            for &d in &[1e-3_f64, 1.0, 7.5] {
                let sc = d.max(d * d);
                assert!((kernel_c(d, lo) - kernel_c(d, hi)).abs() < 1e-13 * sc, "C at {s}");
                assert!((kernel_d(d, lo) - kernel_d(d, hi)).abs() < 1e-13 * sc, "D at {s}");
            }
        }
    }

    #[test]
    fn series_matches_closed_form_slightly_inside() {
        // The closed form is still accurate to ~1e-12 at |s| = 0.45.
        for &s in &[0.45, -0.45, 0.3, -0.3] {
            let closed_a = {
                let s3: f64 = s * s * s;
                (-5.0 * s3 - 12.0 * s * s + 12.0 * s + 6.0 * (s3 - 3.0 * s + 2.0) * (1.0 - s).abs().ln())
                    / (6.0 * PI * s3)
            };
            assert!((kernel_a(s) - closed_a).abs() < 1e-11, "s={s}");
        }
    }

    #[test]
    fn kernels_finite_at_neighbouring_node() {
        assert!((kernel_a(1.0) + 5.0 / (6.0 * PI)).abs() < 1e-15);
        assert!((kernel_b(1.0) + 1.0 / (6.0 * PI)).abs() < 1e-15);
        assert!(kernel_c(0.3, 1.0).is_finite());
        assert!(kernel_d(0.3, 1.0).is_finite());
    }

    #[test]
    fn node_limits_match_kernels_near_node() {
        let (dl, dr) = (0.7, 1.3);
        let eps = 1e-7;
        let x = eps;
        let l = -dl / x;
        let r = dr / x;
        let hp = kernel_a(l) - kernel_a(r);
        assert!((hp - hilbert_p_at_node(dl, dr)).abs() < 1e-5);
        let hq = -dl * kernel_b(l) - dr * kernel_b(r);
        assert!((hq - hilbert_q_at_node(dl, dr)).abs() < 1e-5);
        let lp = kernel_c(dl, l) + kernel_c(dr, r);
        let lp_node = potential_p_at_node_side(dl) + potential_p_at_node_side(dr);
        assert!((lp - lp_node).abs() < 1e-5);
        let lq = kernel_d(dl, l) - kernel_d(dr, r);
        let lq_node = potential_q_at_node_side(dl, true) + potential_q_at_node_side(dr, false);
        assert!((lq - lq_node).abs() < 1e-5);
    }
}

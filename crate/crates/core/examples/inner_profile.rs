//! Normalized inner profile of a snapshot, compared with the traveling wave
//! for the same `a`.
//!
//! ```text
//! cargo run --example inner_profile -- gclm-out/table5_a-0.2/profile.csv -0.2
//! ```
//!
//! Without arguments a synthetic peak is used.

use std::path::Path;

use gclm::analysis::{compare_profiles, extract_inner_profile};
use gclm::io::{column, read_csv};
use gclm::traveling_wave::{solve_fixed_point, WaveSettings};

fn main() -> gclm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (x, omega, a) = match args.first() {
        Some(path) => {
            let (h, rows) = read_csv(Path::new(path))?;
            let a = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(-0.2);
            (column(&h, &rows, "X")?, column(&h, &rows, "Omega")?, a)
        }
        None => {
            let x: Vec<f64> = (0..=4000).map(|i| 0.001 * i as f64).collect();
            let omega = x.iter().map(|t| -5.0 / (1.0 + ((t - 1.2) / 0.05).powi(2))).collect();
            (x, omega, 0.0)
        }
    };
    let inner = extract_inner_profile(&x, &omega, 5.0, 401)?;
    println!("peak at X = {:.6}, amplitude {:.4}, width {:.4e}", inner.peak.x_m, inner.amplitude(), inner.width());

    let wave = solve_fixed_point(a, &WaveSettings { drho: 0.01, ..Default::default() })?;
    let (wx, ww) = (&wave.profile.x, &wave.profile.omega);
    let xs: Vec<f64> = wx.iter().rev().map(|t| -t).chain(wx.iter().skip(1).copied()).collect();
    let ws: Vec<f64> = ww.iter().rev().chain(ww.iter().skip(1)).map(|v| -v).collect();
    let wave_inner = extract_inner_profile(&xs, &ws, 5.0, 401)?;
    let d = compare_profiles(
        (&inner.x_hat, &inner.omega_hat),
        (&wave_inner.x_hat, &wave_inner.omega_hat),
        [-5.0, 5.0],
        1001,
    )?;
    println!("sup |inner - wave| on [-5, 5]: {:.3e}", d.sup_abs);
    Ok(())
}

//! Recover blowup exponents from synthetic `C (T - t)^eta` series, or fit a
//! recorded run history when a path is given.
//!
//! ```text
//! cargo run --example power_law_fit
//! cargo run --example power_law_fit -- gclm-out/table5_a-0.2/history.csv 1.3 1.55
//! ```

use std::path::Path;

use gclm::analysis::fit_power_law;
use gclm::io::read_history;
use gclm::pipeline::fit_history;

fn main() -> gclm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Some(path) = args.first() {
        let window = match (args.get(1), args.get(2)) {
            (Some(a), Some(b)) => Some([a.parse().unwrap_or(0.0), b.parse().unwrap_or(0.0)]),
            _ => None,
        };
        let fit = fit_history(&read_history(Path::new(path))?, window)?;
        println!("amplitude exponent {:.4}  width exponent {:.4}  gamma {:.4}", fit.amplitude.eta, fit.width.eta, fit.gamma);
        return Ok(());
    }
    let big_t = 2.0;
    let t: Vec<f64> = (0..400).map(|i| 1.0 + 0.9 * i as f64 / 399.0).collect();
    for eta in [-1.5, -1.2, 1.0] {
        let v: Vec<f64> = t.iter().map(|s| 3.0 * (big_t - s).powf(eta)).collect();
        let fit = fit_power_law(&t, &v, [1.0, 1.9])?;
        println!("eta {eta:>5}: crude {:.5}  refined {:.6}  R^2 {:.8}  T {:.6}", fit.eta_crude, fit.eta, fit.r2, fit.t_est);
    }
    Ok(())
}

//! The exact `a = 0` solution next to a rescaling run started from the same
//! data.
//!
//! ```text
//! cargo run --example oracle_a0
//! ```

use gclm::analysis::oracle_a0;
use gclm::config::RunConfig;
use gclm::pipeline::simulate;

fn main() -> gclm::Result<()> {
    let cfg = RunConfig::load("oracle_a0")?;
    let out = simulate(&cfg)?;
    for snap in &out.snapshots {
        let worst = snap
            .x
            .iter()
            .zip(&snap.hilbert)
            .filter(|(x, _)| (**x <= 0.8) || (**x >= 1.2 && **x <= 3.0))
            .map(|(x, g)| (g - oracle_a0(*x, snap.tau).g).abs())
            .fold(0.0, f64::max);
        println!("tau = {:>4}: max |G - G_exact| on [0, 0.8] u [1.2, 3] = {worst:.3e}", snap.tau);
    }
    for x in [0.0, 0.5, 0.9, 1.1, 2.0] {
        println!("x = {x:>4}: G(x, 20) = {:.6}, limit 2/(1 - x^2) = {:.6}", oracle_a0(x, 20.0).g, 2.0 / (1.0 - x * x));
    }
    Ok(())
}

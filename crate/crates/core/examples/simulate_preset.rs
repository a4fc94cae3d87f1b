//! Dynamic rescaling run of a shipped preset, written under
//! `$GCLM_OUTPUT_ROOT/<name>`.
//!
//! ```text
//! cargo run --example simulate_preset -- table1_a0.5_k3
//! cargo run --example simulate_preset -- table4_a-1.0 numerics.tau_max=50
//! ```

use gclm::config::RunConfig;
use gclm::io::output_root;
use gclm::pipeline::simulate_to;

fn main() -> gclm::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "table1_a0.5_k3".into());
    let mut cfg = RunConfig::load(&name)?;
    for assignment in args {
        cfg.set_str(&assignment)?;
    }
    let dir = output_root().join(&cfg.name);
    let (s, code) = simulate_to(&dir, &cfg)?;
    println!("{}: {:?} after {} steps, tau = {:.2}", s.name, s.status, s.steps, s.tau);
    println!("c_l = {:.6}  c_w = {:.6}  gamma = {:.6}  residual = {:.2e}", s.c_l, s.c_omega, s.gamma, s.residual);
    if let Some(g) = cfg.expect.gamma {
        println!("expected gamma {g}, difference {:.2e}", s.gamma - g);
    }
    println!("output in {} (exit code {code})", dir.display());
    Ok(())
}

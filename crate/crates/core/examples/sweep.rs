//! Concurrent runs of several presets, shortened by an override so the
//! example finishes quickly.
//!
//! ```text
//! cargo run --example sweep -- table2_ 2
//! ```

use gclm::config::RunConfig;
use gclm::io::output_root;
use gclm::pipeline::sweep;
use gclm::presets::preset_names;

fn main() -> gclm::Result<()> {
    let mut args = std::env::args().skip(1);
    let prefix = args.next().unwrap_or_else(|| "table2_".into());
    let threads = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let mut configs = Vec::new();
    for name in preset_names(&prefix) {
        let mut cfg = RunConfig::load(name)?;
        cfg.set_str("numerics.tau_max = 5")?;
        cfg.horizon = true;
        configs.push(cfg);
    }
    let root = output_root().join("sweep");
    for e in sweep(&root, &configs, threads)? {
        match e.summary {
            Some(s) => println!("{:<20} code {} tau {:>5.2} gamma {:>9.5} residual {:.2e}", e.name, e.code, s.tau, s.gamma, s.residual),
            None => println!("{:<20} code {} error {}", e.name, e.code, e.error.unwrap_or_default()),
        }
    }
    println!("summary in {}", root.join("sweep.json").display());
    Ok(())
}

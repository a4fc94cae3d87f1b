//! Fixed point of the traveling-wave map for a few values of `a`, with tail
//! classification and the admissible-set margins.
//!
//! ```text
//! cargo run --example traveling_wave -- 0 -0.5 0.5
//! ```

use gclm::traveling_wave::{check_membership, solve_fixed_point, WaveSettings};

fn main() -> gclm::Result<()> {
    let mut values: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if values.is_empty() {
        values = vec![0.0, -0.5, -1.0, 0.5];
    }
    let settings = WaveSettings { drho: 0.01, ..Default::default() };
    for a in values {
        let res = solve_fixed_point(a, &settings)?;
        let m = check_membership(&res.profile, a)?;
        println!(
            "a = {a:>5}: r = {:.8} after {} iterations (increment {:.1e}), admissible {}",
            res.r,
            res.iterations,
            res.increment,
            m.passes(1e-9)
        );
        println!("          tail {:?}", res.tail);
    }
    Ok(())
}

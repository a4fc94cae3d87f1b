//! Residual of the steady rescaled equation for the closed-form profiles.
//!
//! ```text
//! cargo run --example steady_profiles
//! ```

use gclm::pipeline::verify_profile;
use gclm::profiles::{steady_triple, ProfileKind};

fn main() -> gclm::Result<()> {
    let kinds = [
        ProfileKind::Clm0,
        ProfileKind::DeGregorioHalf,
        ProfileKind::Castro { a: 0.5 },
        ProfileKind::CAlpha { alpha: 0.25 },
        ProfileKind::SingularHalfLine { a: -0.25 },
        ProfileKind::SingularHalfLine { a: -0.5 },
        ProfileKind::SingularHalfLine { a: -1.0 },
    ];
    let points = [1.5, 2.0, 5.0];
    for kind in kinds {
        let t = steady_triple(kind)?;
        let worst = verify_profile(kind, &points)?.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
        println!("{:<45} c_l {:>8.4} c_w {:>8.4} gamma {:>8.4} max|R| {worst:.2e}", format!("{kind:?}"), t.c_l, t.c_omega, t.gamma());
    }
    Ok(())
}

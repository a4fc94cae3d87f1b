//! Ten-stage, fourth-order strong-stability-preserving Runge-Kutta method
//! in its two-register form.

/// Advance `u` by one step of size `dt`.
///
/// `rhs(stage, u, out)` must write `du/dt` into `out`; `stage` runs from 0 to 9
/// and is passed along so callers can record per-stage side products.
pub fn ssprk104_step<E>(
    u: &mut [f64],
    dt: f64,
    mut rhs: impl FnMut(usize, &[f64], &mut [f64]) -> Result<(), E>,
) -> Result<(), E> {
    let n = u.len();
    let mut q1 = u.to_vec();
    let mut q2 = u.to_vec();
    let mut k = vec![0.0; n];
    let mut stage = 0;
    for _ in 0..5 {
        rhs(stage, &q1, &mut k)?;
        stage += 1;
        q1.iter_mut().zip(&k).for_each(|(q, d)| *q += dt / 6.0 * d);
    }
    for (a, b) in q2.iter_mut().zip(q1.iter_mut()) {
        *a = *a / 25.0 + 9.0 / 25.0 * *b;
        *b = 15.0 * *a - 5.0 * *b;
    }
    for _ in 0..4 {
        rhs(stage, &q1, &mut k)?;
        stage += 1;
        q1.iter_mut().zip(&k).for_each(|(q, d)| *q += dt / 6.0 * d);
    }
    rhs(stage, &q1, &mut k)?;
    for i in 0..n {
        u[i] = q2[i] + 0.6 * q1[i] + 0.1 * dt * k[i];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(steps: usize) -> f64 {
        // y' = -y^2 + cos(t) folded into an autonomous system (y, t)
        let mut u = vec![1.0, 0.0];
        let dt = 2.0 / steps as f64;
        for _ in 0..steps {
            ssprk104_step::<()>(&mut u, dt, |_, v, out| {
                out[0] = -v[0] * v[0] + v[1].cos();
                out[1] = 1.0;
                Ok(())
            })
            .unwrap();
        }
        u[0]
    }

    #[test]
    fn fourth_order_convergence() {
        let reference = integrate(4000);
        let e1 = (integrate(20) - reference).abs();
        let e2 = (integrate(40) - reference).abs();
        let order = (e1 / e2).log2();
        assert!(order > 3.8 && order < 4.5, "order {order}");
    }

    #[test]
    fn linear_invariants_are_preserved() {
        // d/dt (u0 + u1) = 0 exactly for this right-hand side
        let mut u = vec![0.3, 0.7];
        for _ in 0..100 {
            ssprk104_step::<()>(&mut u, 0.05, |_, v, out| {
                let flux = v[0] * v[1].sin();
                out[0] = -flux;
                out[1] = flux;
                Ok(())
            })
            .unwrap();
        }
        assert!((u[0] + u[1] - 1.0).abs() < 1e-13, "{}", u[0] + u[1] - 1.0);
    }
}

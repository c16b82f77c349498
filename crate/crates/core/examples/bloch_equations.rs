//! Three-level and two-level Bloch equations integrated with RK4.

use qutrit_cp::dynamics::{evolve_qubit, evolve_three_level, QubitBlochParams, ThreeLevelParams};
use qutrit_cp::gellmann::{density_from_coherent, CoherentVector};
use qutrit_cp::BlochVector3;

fn main() -> qutrit_cp::Result<()> {
    // start in level 1: w1 = -1, w2 = -1/sqrt(3)
    let s0 = CoherentVector {
        w1: -1.0,
        w2: -1.0 / 3f64.sqrt(),
        ..Default::default()
    };
    let p = ThreeLevelParams {
        alpha: 0.8,
        beta: 0.5,
        delta: 0.2,
    };
    let traj = evolve_three_level(&s0, &p, 10.0, 1e-3)?;
    let drift = traj
        .iter()
        .map(|(_, s)| (s.norm() - s0.norm()).abs())
        .fold(0.0, f64::max);
    println!(
        "three-level: {} samples, max |S| drift {drift:.2e}",
        traj.len()
    );
    for (t, s) in traj.iter().step_by(2500) {
        let rho = density_from_coherent(s);
        println!(
            "  t={t:5.2}  populations {:.4} {:.4} {:.4}",
            rho[(0, 0)].re,
            rho[(1, 1)].re,
            rho[(2, 2)].re
        );
    }

    let q = QubitBlochParams {
        t_u: 20.0,
        t_v: 20.0,
        t_w: 10.0,
        delta: 0.0,
        omega: 1.0,
        w_eq: -1.0,
    };
    let traj = evolve_qubit(&BlochVector3([0.0, 0.0, -1.0]), &q, 30.0, 1e-2)?;
    let (t, b) = traj.last().unwrap();
    println!(
        "two-level damped Rabi: at t={t} (u,v,w) = ({:.4}, {:.4}, {:.4})",
        b.0[0], b.0[1], b.0[2]
    );
    Ok(())
}

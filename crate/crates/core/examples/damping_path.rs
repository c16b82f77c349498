//! Exponential damping paths: where does complete positivity first break?

use qutrit_cp::dynamics::{cp_first_violation, damping_channel_at, DampingRates};

fn main() -> qutrit_cp::Result<()> {
    let paths = [
        ("uniform decay", [-1.0; 8]),
        ("L8 grows", [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        (
            "fast coherences",
            [-3.0, -3.0, -0.1, -3.0, -3.0, -3.0, -3.0, -0.1],
        ),
        (
            "slow coherences",
            [-0.1, -0.1, -2.0, -0.1, -0.1, -0.1, -0.1, -2.0],
        ),
    ];
    for (name, g) in paths {
        let rates = DampingRates(g);
        match cp_first_violation(&rates, 10.0, 1001, 1e-9)? {
            Some(t) => {
                let l = damping_channel_at(&rates, t)?.lambda;
                println!(
                    "{name:<16} violates at t = {t:.6}  (L1 = {:.4}, L3 = {:.4})",
                    l[0], l[2]
                );
            }
            None => println!("{name:<16} stays CP on [0, 10]"),
        }
    }
    Ok(())
}

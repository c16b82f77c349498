//! Closed-form CP conditions for diagonal channels next to the eigenvalue test.

use qutrit_cp::cp::{
    cp_analytic_diagonal, cp_numeric, cubic_coefficients_derived, cubic_coefficients_printed,
    linear_conditions_diagonal,
};
use qutrit_cp::AffineChannelQutrit;

fn main() -> qutrit_cp::Result<()> {
    let lambda = [0.4, 0.2, -0.3, 0.1, 0.5, -0.2, 0.3, 0.6];
    let ch = AffineChannelQutrit::diagonal(lambda);

    println!(
        "linear conditions: {:?}",
        linear_conditions_diagonal(&lambda)
    );
    let cubic = cubic_coefficients_derived(&lambda);
    println!(
        "cubic x^3 + ({:.4}) x^2 + ({:.4}) x + ({:.4}), f = {:.3e}",
        cubic.a,
        cubic.b,
        cubic.c,
        cubic.discriminant()
    );

    let a = cp_analytic_diagonal(&ch, 1e-9)?;
    let n = cp_numeric(&ch, 1e-9);
    println!(
        "analytic: cp={} min={:.6}  roots {:?}",
        a.is_cp, a.min_eigenvalue, a.cubic_roots
    );
    println!("numeric : cp={} min={:.6}", n.is_cp, n.min_eigenvalue);

    // the printed constant term is off by -4 lambda^3 along Lambda_i = lambda
    for lam in [0.3, 1.0] {
        let printed = cubic_coefficients_printed(&[lam; 8]);
        let derived = cubic_coefficients_derived(&[lam; 8]).scaled(8.0);
        println!(
            "lambda={lam}: printed D {:.4}, derived D {:.4}",
            printed.constant, derived.constant
        );
    }

    // the depolarizing window
    for lam in [-0.2, -0.125, 0.5, 1.0, 1.01] {
        let v = cp_analytic_diagonal(&AffineChannelQutrit::depolarizing(lam), 1e-9)?;
        println!("depolarizing({lam:>6}): cp={}", v.is_cp);
    }
    Ok(())
}

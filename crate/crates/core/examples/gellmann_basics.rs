//! Bloch vectors, the star product and the coherent-vector parametrization.

use qutrit_cp::gellmann::{
    bloch_from_density, coherent_from_density, density_from_bloch, is_pure, projector, pure_state,
    PureStateParams,
};

fn main() -> qutrit_cp::Result<()> {
    let p = PureStateParams {
        theta: 0.7,
        phi: 0.3,
        chi1: 1.2,
        chi2: 4.0,
    };
    let rho = projector(&pure_state(&p)?);
    let n = bloch_from_density(&rho)?;

    println!("n        = {:?}", n.0.map(|x| (x * 1e6).round() / 1e6));
    println!("|n|      = {:.12}", n.norm());
    println!("n*n - n  = {:.2e}", n.star(&n).max_abs_diff(&n));
    println!("pure?    {}", is_pure(&n, 1e-10));

    let mixed = density_from_bloch(&qutrit_cp::BlochVector8(n.0.map(|x| 0.5 * x)));
    println!(
        "half-length vector pure? {}",
        is_pure(&bloch_from_density(&mixed)?, 1e-10)
    );

    let s = coherent_from_density(&rho)?;
    println!(
        "coherent vector {:?}",
        s.to_array().map(|x| (x * 1e6).round() / 1e6)
    );
    Ok(())
}

//! Dynamical matrix, Jamiolkowski state and Kraus operators of a channel.

use qutrit_cp::choi::{apply_kraus, choi_from_channel, jamiolkowski_state, kraus_from_choi};
use qutrit_cp::linalg::{hermitian_eigenvalues, ComplexMatrix};
use qutrit_cp::AffineChannelQutrit;

fn main() -> qutrit_cp::Result<()> {
    let ch = AffineChannelQutrit::projection_3678();
    let d = choi_from_channel(&ch);
    let spectrum: Vec<f64> = hermitian_eigenvalues(&d.matrix)
        .iter()
        .map(|x| (x * 1e9).round() / 1e9 + 0.0)
        .collect();
    println!("spectrum of D: {spectrum:?}");

    let j = jamiolkowski_state(&ch, 1e-9);
    println!(
        "D/3 is a state: {} (min eigenvalue {:.1e})",
        j.is_state, j.min_eigenvalue
    );
    for (r, c) in [(0, 0), (4, 4), (4, 8), (8, 8)] {
        println!("  rho[{r},{c}] = {:.6}", j.matrix[(r, c)].re);
    }

    let dep = AffineChannelQutrit::depolarizing(0.5);
    let kraus = kraus_from_choi(&choi_from_channel(&dep), 1e-10)?;
    println!(
        "depolarizing(0.5): {} Kraus operators, completeness residual {:.1e}",
        kraus.len(),
        kraus.completeness_residual()
    );

    let rho = ComplexMatrix::from_real_diagonal(&[0.6, 0.3, 0.1]);
    let diff = apply_kraus(&kraus, &rho).max_abs_diff(&dep.apply_to_density(&rho)?);
    println!("operator-sum vs affine map: {diff:.1e}");

    let json = serde_json::to_string(&kraus.to_document())?;
    println!("{} ...", &json[..120]);
    Ok(())
}

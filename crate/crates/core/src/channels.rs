//! Affine channels `n -> Lambda n + t` with diagonal `Lambda`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gellmann::{
    bloch_from_density, density_from_bloch, gellmann_basis, pauli_basis, trace_of_product,
    BlochVector3, BlochVector8,
};
use crate::linalg::ComplexMatrix;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A trace-preserving affine map on Bloch vectors, extended linearly to all
/// `N x N` operators. This is what the Choi construction consumes.
pub trait AffineChannel {
    /// Hilbert-space dimension `N` (2 or 3).
    fn system_dim(&self) -> usize;

    /// Action on an arbitrary (not necessarily Hermitian or unit-trace)
    /// operator: the identity component is kept, traceless components are
    /// scaled by `Lambda`, and `t` is added weighted by the trace.
    fn map_operator(&self, x: &ComplexMatrix) -> ComplexMatrix;

    fn lambda(&self) -> &[f64];

    fn translation(&self) -> &[f64];

    fn is_unital(&self) -> bool {
        self.translation().iter().all(|&t| t == 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineChannelQutrit {
    pub lambda: [f64; 8],
    pub t: [f64; 8],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineChannelQubit {
    pub lambda: [f64; 3],
    pub t: [f64; 3],
}

impl AffineChannelQutrit {
    pub fn from_components(lambda: [f64; 8], t: [f64; 8]) -> Self {
        Self { lambda, t }
    }

    pub fn diagonal(lambda: [f64; 8]) -> Self {
        Self {
            lambda,
            t: [0.0; 8],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([1.0; 8])
    }

    /// All `Lambda_i = lambda`, no translation.
    pub fn depolarizing(lambda: f64) -> Self {
        Self::diagonal([lambda; 8])
    }

    /// Keeps components 3, 6, 7, 8 and discards the rest.
    pub fn projection_3678() -> Self {
        Self::diagonal([0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0])
    }

    /// `n -> n + (X, X, Y, 0, 0, 0, 0, 0)`.
    pub fn translation_t1(x: f64, y: f64) -> Self {
        Self {
            lambda: [1.0; 8],
            t: [x, x, y, 0.0, 0.0, 0.0, 0.0, 0.0],
        }
    }

    /// `n -> n + (X, X, Y, 0, 0, 0, 0, Y)`.
    pub fn translation_t2(x: f64, y: f64) -> Self {
        Self {
            lambda: [1.0; 8],
            t: [x, x, y, 0.0, 0.0, 0.0, 0.0, y],
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_unital()
    }

    pub fn is_finite(&self) -> bool {
        self.lambda.iter().chain(&self.t).all(|v| v.is_finite())
    }

    /// Diagnostic only: every `|Lambda_i| <= 1`.
    pub fn is_quasi_damping(&self) -> bool {
        self.lambda.iter().all(|l| l.abs() <= 1.0)
    }

    pub fn apply_to_bloch(&self, n: &BlochVector8) -> BlochVector8 {
        BlochVector8(std::array::from_fn(|i| self.lambda[i] * n.0[i] + self.t[i]))
    }

    /// `rho -> (I + sqrt(3)(Lambda n + t)·lambda) / 3`.
    pub fn apply_to_density(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = bloch_from_density(rho)?;
        Ok(density_from_bloch(&self.apply_to_bloch(&n)))
    }

    /// Channel equal to applying `self` first and then `next`.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            lambda: std::array::from_fn(|i| next.lambda[i] * self.lambda[i]),
            t: std::array::from_fn(|i| next.lambda[i] * self.t[i] + next.t[i]),
        }
    }

    /// `sum_i ((n'_i - t_i) / Lambda_i)^2 - 1` for `n' = Lambda n + t`; zero
    /// when `n` lies on the unit sphere.
    pub fn image_ellipsoid_residual(&self, n_pure: &BlochVector8) -> Result<f64> {
        if let Some(index) = self.lambda.iter().position(|&l| l == 0.0) {
            return Err(Error::SingularParameter { index: index + 1 });
        }
        let image = self.apply_to_bloch(n_pure);
        let sum: f64 = (0..8)
            .map(|i| ((image.0[i] - self.t[i]) / self.lambda[i]).powi(2))
            .sum();
        Ok(sum - 1.0)
    }

    /// `max_{|n| <= 1} |Lambda n + t|`. A value above 1 rules out complete
    /// positivity; a value at or below 1 proves nothing.
    pub fn ball_image_bound(&self) -> f64 {
        ball_image_bound(&self.lambda, &self.t)
    }
}

impl AffineChannel for AffineChannelQutrit {
    fn system_dim(&self) -> usize {
        3
    }

    fn map_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let basis = gellmann_basis();
        // x = sum_alpha c_alpha lambda_alpha, c_alpha = Tr(x lambda_alpha) / 2
        let coeffs: [_; 9] = std::array::from_fn(|a| trace_of_product(x, &basis[a]) * 0.5);
        // Tr(x) = c_0 Tr(lambda_0) = sqrt(6) c_0
        let trace = coeffs[0] * 6f64.sqrt();
        let mut out = basis[0].scale(coeffs[0]);
        for a in 1..9 {
            let coeff = coeffs[a] * self.lambda[a - 1] + trace * (self.t[a - 1] / SQRT3);
            out = &out + &basis[a].scale(coeff);
        }
        out
    }

    fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    fn translation(&self) -> &[f64] {
        &self.t
    }
}

impl AffineChannelQubit {
    pub fn new(lambda: [f64; 3], t: [f64; 3]) -> Self {
        Self { lambda, t }
    }

    pub fn diagonal(lambda: [f64; 3]) -> Self {
        Self {
            lambda,
            t: [0.0; 3],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([1.0; 3])
    }

    pub fn apply_to_bloch(&self, b: &BlochVector3) -> BlochVector3 {
        BlochVector3(std::array::from_fn(|i| self.lambda[i] * b.0[i] + self.t[i]))
    }

    pub fn apply_to_density(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let b = crate::gellmann::bloch3_from_density(rho)?;
        Ok(crate::gellmann::density_from_bloch3(
            &self.apply_to_bloch(&b),
        ))
    }

    pub fn ball_image_bound(&self) -> f64 {
        ball_image_bound(&self.lambda, &self.t)
    }
}

impl AffineChannel for AffineChannelQubit {
    fn system_dim(&self) -> usize {
        2
    }

    fn map_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let basis = pauli_basis();
        let coeffs: [_; 4] = std::array::from_fn(|a| trace_of_product(x, &basis[a]) * 0.5);
        let mut out = basis[0].scale(coeffs[0]);
        for a in 1..4 {
            let coeff = coeffs[a] * self.lambda[a - 1] + coeffs[0] * self.t[a - 1];
            out = &out + &basis[a].scale(coeff);
        }
        out
    }

    fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    fn translation(&self) -> &[f64] {
        &self.t
    }
}

/// Maximum of `|diag(lambda) n + t|` over the closed unit ball.
///
/// The objective is a convex quadratic, so the maximum sits on the sphere.
/// Stationary points satisfy `n_i = lambda_i t_i / (mu - lambda_i^2)`; the
/// global maximiser has the largest multiplier `mu >= max lambda_i^2`, found
/// by bisection on the secular equation `sum n_i^2 = 1`. When the secular
/// sum stays below 1 at `mu = max lambda_i^2` the leftover norm is put on a
/// direction of largest `|lambda_i|`.
pub fn ball_image_bound(lambda: &[f64], t: &[f64]) -> f64 {
    assert_eq!(lambda.len(), t.len());
    let sq: Vec<f64> = lambda.iter().map(|l| l * l).collect();
    let amax = sq.iter().copied().fold(0.0, f64::max);
    let coupling: Vec<f64> = lambda.iter().zip(t).map(|(l, t)| l * t).collect();
    let coupling_norm = coupling.iter().map(|c| c * c).sum::<f64>().sqrt();

    let objective = |n: &[f64]| -> f64 {
        lambda
            .iter()
            .zip(t)
            .zip(n)
            .map(|((l, t), n)| (l * n + t).powi(2))
            .sum::<f64>()
            .sqrt()
    };

    if coupling_norm == 0.0 {
        // t is orthogonal to every active axis: push n along the largest axis
        let mut n = vec![0.0; lambda.len()];
        if let Some(k) = (0..sq.len()).max_by(|&a, &b| sq[a].total_cmp(&sq[b])) {
            n[k] = 1.0;
        }
        return objective(&n);
    }

    let secular = |mu: f64| -> f64 {
        coupling
            .iter()
            .zip(&sq)
            .map(|(c, a)| {
                if *c == 0.0 {
                    0.0
                } else {
                    (c / (mu - a)).powi(2)
                }
            })
            .sum()
    };

    // hard case: no coupling on the largest axes and the secular sum is already <= 1
    let top_coupled = coupling
        .iter()
        .zip(&sq)
        .any(|(c, a)| *c != 0.0 && *a == amax);
    if !top_coupled {
        let partial = secular(amax);
        if partial <= 1.0 {
            let mut n: Vec<f64> = coupling
                .iter()
                .zip(&sq)
                .map(|(c, a)| if *c == 0.0 { 0.0 } else { c / (amax - a) })
                .collect();
            if let Some(k) = (0..sq.len()).find(|&k| sq[k] == amax) {
                n[k] = (1.0 - partial).max(0.0).sqrt();
            }
            return objective(&n);
        }
    }

    // secular(mu) decreases on (amax, inf); secular(amax + |coupling|) <= 1
    let mut lo = amax;
    let mut hi = amax + coupling_norm;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if secular(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let n: Vec<f64> = coupling
        .iter()
        .zip(&sq)
        .map(|(c, a)| if *c == 0.0 { 0.0 } else { c / (hi - a) })
        .collect();
    objective(&n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gellmann::{is_pure, projector, pure_state, PureStateParams};

    fn sample_pure() -> BlochVector8 {
        let p = PureStateParams {
            theta: 0.7,
            phi: 1.1,
            chi1: 2.0,
            chi2: 5.0,
        };
        let rho = projector(&pure_state(&p).unwrap());
        let n = bloch_from_density(&rho).unwrap();
        assert!(is_pure(&n, 1e-10));
        n
    }

    #[test]
    fn identity_and_projection_on_bloch() {
        let n = BlochVector8([0.1, -0.2, 0.3, 0.05, -0.15, 0.25, 0.35, -0.4]);
        assert_eq!(AffineChannelQutrit::identity().apply_to_bloch(&n), n);
        let out = AffineChannelQutrit::projection_3678().apply_to_bloch(&n);
        assert_eq!(
            out,
            BlochVector8([0.0, 0.0, 0.3, 0.0, 0.0, 0.25, 0.35, -0.4])
        );
        let replace = AffineChannelQutrit::from_components(
            [0.0; 8],
            [0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        );
        assert_eq!(
            replace.apply_to_bloch(&n),
            BlochVector8([0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn constructors() {
        let t1 = AffineChannelQutrit::translation_t1(0.1, 0.05);
        assert_eq!(t1.lambda, [1.0; 8]);
        assert_eq!(t1.t, [0.1, 0.1, 0.05, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let t2 = AffineChannelQutrit::translation_t2(0.1, 0.05);
        assert_eq!(t2.t, [0.1, 0.1, 0.05, 0.0, 0.0, 0.0, 0.0, 0.05]);
        assert_eq!(
            AffineChannelQutrit::depolarizing(1.0),
            AffineChannelQutrit::identity()
        );
        let p = AffineChannelQutrit::projection_3678();
        assert_eq!(p.lambda, [0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        assert_eq!(p.t, [0.0; 8]);
    }

    #[test]
    fn depolarizing_zero_gives_maximally_mixed() {
        let rho = projector(
            &pure_state(&PureStateParams {
                theta: 0.4,
                phi: 0.2,
                chi1: 0.0,
                chi2: 1.0,
            })
            .unwrap(),
        );
        let out = AffineChannelQutrit::depolarizing(0.0)
            .apply_to_density(&rho)
            .unwrap();
        assert!(out.max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)) < 1e-15);
        let same = AffineChannelQutrit::identity()
            .apply_to_density(&rho)
            .unwrap();
        assert!(same.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn map_operator_agrees_with_density_action() {
        let ch = AffineChannelQutrit::from_components(
            [0.3, -0.2, 0.5, 0.1, 0.0, -0.4, 0.6, 0.2],
            [0.05, -0.1, 0.02, 0.0, 0.03, 0.0, -0.07, 0.01],
        );
        let rho = projector(
            &pure_state(&PureStateParams {
                theta: 1.0,
                phi: 0.5,
                chi1: 3.0,
                chi2: 0.2,
            })
            .unwrap(),
        );
        let a = ch.apply_to_density(&rho).unwrap();
        let b = ch.map_operator(&rho);
        assert!(a.max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn ellipsoid_residual() {
        let n = sample_pure();
        assert!(
            AffineChannelQutrit::identity()
                .image_ellipsoid_residual(&n)
                .unwrap()
                .abs()
                < 1e-10
        );
        let half = AffineChannelQutrit::depolarizing(0.5);
        assert!(half.image_ellipsoid_residual(&n).unwrap().abs() < 1e-10);
        let mut lambda = [1.0; 8];
        lambda[0] = 0.0;
        let err = AffineChannelQutrit::diagonal(lambda).image_ellipsoid_residual(&n);
        assert!(matches!(err, Err(Error::SingularParameter { index: 1 })));
    }

    #[test]
    fn ball_bound_examples() {
        assert!((AffineChannelQutrit::identity().ball_image_bound() - 1.0).abs() < 1e-12);
        let t = [0.3 / 8f64.sqrt(); 8];
        let replace = AffineChannelQutrit::from_components([0.0; 8], t);
        assert!((replace.ball_image_bound() - 0.3).abs() < 1e-12);
        assert!((AffineChannelQutrit::depolarizing(0.5).ball_image_bound() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ball_bound_simple_cases_in_closed_form() {
        // one axis: max |l n + t| = |l| + |t|
        assert!((ball_image_bound(&[0.5], &[0.2]) - 0.7).abs() < 1e-12);
        assert!((ball_image_bound(&[-0.5], &[0.2]) - 0.7).abs() < 1e-12);
        // equal lambdas: the ball maps to a ball of radius |l| around t
        let t = [0.1, -0.2, 0.05];
        let tn = (0.01f64 + 0.04 + 0.0025).sqrt();
        assert!((ball_image_bound(&[0.4, 0.4, 0.4], &t) - (0.4 + tn)).abs() < 1e-12);
        // hard case: translation only along a weak axis
        let v = ball_image_bound(&[1.0, 0.1], &[0.0, 0.05]);
        // n = (sqrt(1 - s^2), s) with s = 0.1*0.05/(1-0.01)
        let s: f64 = 0.005 / 0.99;
        let expect = ((1.0 - s * s) + (0.1 * s + 0.05).powi(2)).sqrt();
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn composition_rule() {
        let a = AffineChannelQutrit::from_components(
            [0.5, 0.2, -0.3, 0.9, 0.1, 0.0, 0.4, 0.8],
            [0.1, 0.0, -0.2, 0.0, 0.05, 0.0, 0.0, 0.3],
        );
        let b = AffineChannelQutrit::from_components(
            [0.7, -0.6, 0.2, 0.3, 1.0, 0.5, -0.1, 0.2],
            [0.0, 0.2, 0.0, -0.1, 0.0, 0.05, 0.1, 0.0],
        );
        let n = sample_pure();
        let lhs = b.apply_to_bloch(&a.apply_to_bloch(&n));
        let rhs = a.then(&b).apply_to_bloch(&n);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn qubit_map_operator() {
        let ch = AffineChannelQubit::new([0.5, -0.3, 0.8], [0.1, 0.0, -0.1]);
        let rho = crate::gellmann::density_from_bloch3(&BlochVector3([0.2, 0.3, -0.4]));
        assert!(
            ch.map_operator(&rho)
                .max_abs_diff(&ch.apply_to_density(&rho).unwrap())
                < 1e-15
        );
    }
}

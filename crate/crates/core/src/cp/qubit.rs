use super::{cp_numeric, CpVerdict};
use crate::channels::AffineChannelQubit;

/// Eigenvalue test on the 4x4 Choi matrix of a qubit affine channel.
pub fn qubit_cp(lambda: [f64; 3], t: [f64; 3], tol: f64) -> CpVerdict {
    cp_numeric(&AffineChannelQubit::new(lambda, t), tol)
}

/// Unital diagonal qubit criterion: `(1 + L3)^2 >= (L1 + L2)^2` and
/// `(1 - L3)^2 >= (L1 - L2)^2`.
pub fn tetrahedron_membership(lambda: [f64; 3]) -> bool {
    let [l1, l2, l3] = lambda;
    (1.0 + l3).powi(2) >= (l1 + l2).powi(2) && (1.0 - l3).powi(2) >= (l1 - l2).powi(2)
}

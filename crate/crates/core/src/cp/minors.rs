//! Leading principal minors as a positivity screen.
//!
//! Sylvester's criterion gives a definite answer only when no minor
//! vanishes; a zero minor (common on the CP boundary and for rank-deficient
//! Choi matrices) makes the screen inconclusive and the eigenvalue test
//! has to decide.

use serde::{Deserialize, Serialize};

use super::{cp_numeric, CpMethod, CpVerdict};
use crate::channels::AffineChannel;
use crate::linalg::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorsOutcome {
    Positive,
    NotPositive,
    Inconclusive,
}

/// Determinants of the leading `k x k` blocks, `k = 1..=n`. For Hermitian
/// input these are real; the imaginary rounding residue is dropped.
pub fn principal_minors(m: &ComplexMatrix) -> Vec<f64> {
    assert!(m.is_square());
    (1..=m.rows())
        .map(|k| m.leading_block(k).determinant().re)
        .collect()
}

pub fn psd_by_minors(minors: &[f64], tol: f64) -> MinorsOutcome {
    if minors.iter().any(|m| m.abs() <= tol || !m.is_finite()) {
        MinorsOutcome::Inconclusive
    } else if minors.iter().all(|&m| m > tol) {
        MinorsOutcome::Positive
    } else {
        // every minor is bounded away from zero, so the matrix is nonsingular
        // and some negative minor forces a negative eigenvalue
        MinorsOutcome::NotPositive
    }
}

/// Minors screen backed by the eigenvalue test. The reported `is_cp` is the
/// screen's answer when decisive and consistent with the spectrum, and the
/// spectrum's answer otherwise.
pub fn cp_minors<C: AffineChannel + ?Sized>(ch: &C, tol: f64) -> (CpVerdict, MinorsOutcome) {
    let mut verdict = cp_numeric(ch, tol);
    let d = crate::choi::choi_from_channel(ch);
    let outcome = psd_by_minors(&principal_minors(&d.matrix), tol);
    verdict.method = CpMethod::Minors;
    verdict.is_cp = match outcome {
        MinorsOutcome::Positive if verdict.is_cp => true,
        MinorsOutcome::NotPositive if !verdict.is_cp => false,
        _ => verdict.is_cp,
    };
    (verdict, outcome)
}

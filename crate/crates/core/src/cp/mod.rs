//! Complete-positivity decisions.
//!
//! [`cp_numeric`] (eigenvalues of the Choi matrix) is authoritative. The
//! analytic route for diagonal qutrit channels splits the Choi spectrum into
//! six closed-form linear expressions and the roots of a cubic; both are
//! expressed at three times the eigenvalue scale, and are divided by 3
//! before being compared with anything numeric.

mod cubic;
mod minors;
mod qubit;

pub use cubic::{
    cubic_coefficients_derived, cubic_coefficients_printed, discriminant_f, real_cubic_roots,
    CubicCoefficients, MonicCubic, DEGENERATE_TOL,
};
pub use minors::{cp_minors, principal_minors, psd_by_minors, MinorsOutcome};
pub use qubit::{qubit_cp, tetrahedron_membership};

use serde::{Deserialize, Serialize};

use crate::channels::{AffineChannel, AffineChannelQutrit};
use crate::choi::{choi_from_channel, is_trace_preserving, ChoiMatrix};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Hermiticity tolerance applied to Choi matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Trace-preservation tolerance applied to Choi matrices.
pub const TRACE_PRESERVING_TOL: f64 = 1e-10;

/// The analytic expressions are three times the Choi eigenvalues.
pub const EIGENVALUE_SCALE: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CpMethod {
    Numeric,
    AnalyticDiagonal,
    Minors,
}

/// Outcome of a CP test. Serialises with a fixed field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpVerdict {
    pub method: CpMethod,
    pub is_cp: bool,
    pub min_eigenvalue: f64,
    /// Ascending, Choi-eigenvalue scale.
    pub eigenvalues: Vec<f64>,
    /// Analytic path only; three-times scale, in the fixed condition order.
    pub linear_residuals: Vec<f64>,
    /// Analytic path only; three-times scale, ascending.
    pub cubic_roots: Vec<f64>,
    pub degenerate_cubic: bool,
    pub trace_preserving: bool,
    pub hermitian: bool,
}

impl CpVerdict {
    /// Distance of the smallest eigenvalue from zero; verdicts closer than
    /// `2 * tol` to the boundary may legitimately differ between methods.
    pub fn boundary_margin(&self) -> f64 {
        self.min_eigenvalue.abs()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serialises")
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let scale = m.as_slice().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let defect = m.hermiticity_defect();
    if defect > 1e-10 * scale {
        return Err(Error::NotHermitian(defect));
    }
    Ok(hermitian_eigenvalues(m))
}

fn numeric_from_choi(d: &ChoiMatrix, tol: f64) -> CpVerdict {
    let hermitian = d.is_hermitian(HERMITIAN_TOL);
    let trace_preserving = is_trace_preserving(d, TRACE_PRESERVING_TOL);
    let eigenvalues = hermitian_eigenvalues(&d.matrix);
    let min_eigenvalue = eigenvalues.first().copied().unwrap_or(f64::NAN);
    CpVerdict {
        method: CpMethod::Numeric,
        is_cp: min_eigenvalue >= -tol,
        min_eigenvalue,
        eigenvalues,
        linear_residuals: Vec::new(),
        cubic_roots: Vec::new(),
        degenerate_cubic: false,
        trace_preserving,
        hermitian,
    }
}

/// Builds the Choi matrix and tests `min eigenvalue >= -tol`.
pub fn cp_numeric<C: AffineChannel + ?Sized>(ch: &C, tol: f64) -> CpVerdict {
    numeric_from_choi(&choi_from_channel(ch), tol)
}

/// The six linear expressions for a diagonal qutrit channel, in order:
/// `1 - L8 ± 3/2 (L4 - L5)`, `1 - L8 ± 3/2 (L6 - L7)`,
/// `1 - L8 ± 3/2 (L1 - L2) + 3/2 (L8 - L3)`.
pub fn linear_conditions_diagonal(lambda: &[f64; 8]) -> [f64; 6] {
    let [l1, l2, l3, l4, l5, l6, l7, l8] = *lambda;
    let base = 1.0 - l8;
    let d45 = 1.5 * (l4 - l5);
    let d67 = 1.5 * (l6 - l7);
    let d12 = 1.5 * (l1 - l2);
    let d83 = 1.5 * (l8 - l3);
    [
        base + d45,
        base - d45,
        base + d67,
        base - d67,
        base + d12 + d83,
        base - d12 + d83,
    ]
}

/// Analytic decision for a diagonal (`t = 0`) qutrit channel.
pub fn cp_analytic_diagonal(ch: &AffineChannelQutrit, tol: f64) -> Result<CpVerdict> {
    if !ch.is_diagonal() {
        return Err(Error::UnsupportedChannel(
            "analytic conditions need a diagonal channel (t = 0)".into(),
        ));
    }
    let d = choi_from_channel(ch);
    let residuals = linear_conditions_diagonal(&ch.lambda);
    let cubic = cubic_coefficients_derived(&ch.lambda);
    let f = cubic.discriminant();
    let roots = real_cubic_roots(&cubic)?;

    let mut eigenvalues: Vec<f64> = residuals
        .iter()
        .chain(&roots)
        .map(|v| v / EIGENVALUE_SCALE)
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    let min_eigenvalue = eigenvalues[0];

    Ok(CpVerdict {
        method: CpMethod::AnalyticDiagonal,
        is_cp: min_eigenvalue >= -tol,
        min_eigenvalue,
        eigenvalues,
        linear_residuals: residuals.to_vec(),
        cubic_roots: roots.to_vec(),
        degenerate_cubic: f.abs() <= DEGENERATE_TOL,
        trace_preserving: is_trace_preserving(&d, TRACE_PRESERVING_TOL),
        hermitian: d.is_hermitian(HERMITIAN_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_cp_on_boundary() {
        let v = cp_numeric(&AffineChannelQutrit::identity(), DEFAULT_TOL);
        assert!(v.is_cp);
        assert!(v.min_eigenvalue.abs() < 1e-12);
        assert!(v.trace_preserving && v.hermitian);
        assert_eq!(v.eigenvalues.len(), 9);
    }

    #[test]
    fn depolarizing_outside_window() {
        assert!(!cp_numeric(&AffineChannelQutrit::depolarizing(-0.2), DEFAULT_TOL).is_cp);
        assert!(cp_numeric(&AffineChannelQutrit::depolarizing(-0.1), DEFAULT_TOL).is_cp);
    }

    #[test]
    fn translation_probe_above_boundary_is_not_cp() {
        let v = cp_numeric(&AffineChannelQutrit::translation_t1(0.0, 0.20), DEFAULT_TOL);
        assert!(!v.is_cp);
    }

    #[test]
    fn eigenvalue_examples() {
        let mut d = vec![0.0; 9];
        d[0] = 3.0;
        let vals = eigenvalues_hermitian(&ComplexMatrix::from_real_diagonal(&d)).unwrap();
        assert_eq!(vals[8], 3.0);
        let dep = choi_from_channel(&AffineChannelQutrit::depolarizing(0.0));
        for v in eigenvalues_hermitian(&dep.matrix).unwrap() {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
        let mut bad = ComplexMatrix::identity(3);
        bad[(0, 2)] = num_complex::Complex64::new(1.0, 0.0);
        assert!(matches!(
            eigenvalues_hermitian(&bad),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn linear_condition_examples() {
        assert_eq!(linear_conditions_diagonal(&[1.0; 8]), [0.0; 6]);
        assert_eq!(linear_conditions_diagonal(&[0.0; 8]), [1.0; 6]);
        let mut l = [0.0; 8];
        l[7] = 1.0;
        assert_eq!(
            linear_conditions_diagonal(&l),
            [0.0, 0.0, 0.0, 0.0, 1.5, 1.5]
        );
    }

    #[test]
    fn linear_conditions_match_numeric_spectrum_for_l8_only() {
        let mut l = [0.0; 8];
        l[7] = 1.0;
        let numeric = cp_numeric(&AffineChannelQutrit::diagonal(l), DEFAULT_TOL);
        // residuals / 3 must appear in the spectrum
        for r in linear_conditions_diagonal(&l) {
            assert!(numeric
                .eigenvalues
                .iter()
                .any(|e| (e - r / 3.0).abs() < 1e-12));
        }
    }

    #[test]
    fn analytic_examples() {
        let v = cp_analytic_diagonal(&AffineChannelQutrit::identity(), DEFAULT_TOL).unwrap();
        assert!(v.is_cp);
        assert_eq!(v.method, CpMethod::AnalyticDiagonal);

        let mut l = [1.0; 8];
        l[7] = -1.0;
        let v = cp_analytic_diagonal(&AffineChannelQutrit::diagonal(l), DEFAULT_TOL).unwrap();
        assert_eq!(v.linear_residuals[0], 2.0);
        assert!(!v.is_cp);
        assert!(!cp_numeric(&AffineChannelQutrit::diagonal(l), DEFAULT_TOL).is_cp);

        assert!(
            cp_analytic_diagonal(&AffineChannelQutrit::depolarizing(-0.125), DEFAULT_TOL)
                .unwrap()
                .is_cp
        );
        assert!(
            !cp_analytic_diagonal(&AffineChannelQutrit::depolarizing(-0.13), DEFAULT_TOL)
                .unwrap()
                .is_cp
        );
    }

    #[test]
    fn analytic_rejects_translation() {
        let err = cp_analytic_diagonal(&AffineChannelQutrit::translation_t1(0.1, 0.0), DEFAULT_TOL);
        assert!(matches!(err, Err(Error::UnsupportedChannel(_))));
    }

    #[test]
    fn verdict_json_field_order() {
        let v = cp_numeric(&AffineChannelQutrit::identity(), DEFAULT_TOL);
        let json = v.to_json();
        let keys = [
            "\"method\"",
            "\"is_cp\"",
            "\"min_eigenvalue\"",
            "\"eigenvalues\"",
            "\"linear_residuals\"",
            "\"cubic_roots\"",
            "\"degenerate_cubic\"",
            "\"trace_preserving\"",
            "\"hermitian\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).expect(k)).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.starts_with("{\"method\":\"numeric\""));
    }
}

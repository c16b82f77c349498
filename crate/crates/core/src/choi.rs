//! Dynamical (Choi) matrices, the Jamiolkowski state, and Kraus operators.
//!
//! `D = sum_ij Phi(E_ij) ⊗ E_ij`, with the output factor first. Row index of
//! `D` is `a * N + i` for output level `a` and input level `i`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::AffineChannel;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, ComplexMatrix};

/// Eigenvalues at or below this are dropped during Kraus extraction.
pub const KRAUS_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    pub matrix: ComplexMatrix,
    pub system_dim: usize,
}

impl ChoiMatrix {
    pub fn new(matrix: ComplexMatrix, system_dim: usize) -> Result<Self> {
        let n2 = system_dim * system_dim;
        if matrix.rows() != n2 || matrix.cols() != n2 {
            return Err(Error::Dimension {
                expected: format!("{n2}x{n2}"),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        Ok(Self { matrix, system_dim })
    }

    /// `Tr_A D`, the partial trace over the output factor.
    pub fn reduced_input(&self) -> ComplexMatrix {
        self.matrix
            .partial_trace_first(self.system_dim, self.system_dim)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.matrix.is_hermitian(tol)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

pub fn choi_from_channel<C: AffineChannel + ?Sized>(ch: &C) -> ChoiMatrix {
    let n = ch.system_dim();
    let mut d = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let image = ch.map_operator(&ComplexMatrix::unit(n, i, j));
            // (Phi(E_ij) ⊗ E_ij)[(a n + i), (b n + j)] = Phi(E_ij)[a, b]
            for a in 0..n {
                for b in 0..n {
                    d[(a * n + i, b * n + j)] += image[(a, b)];
                }
            }
        }
    }
    ChoiMatrix {
        matrix: d,
        system_dim: n,
    }
}

/// `max|Tr_A D - I| <= tol`.
pub fn is_trace_preserving(d: &ChoiMatrix, tol: f64) -> bool {
    let id = ComplexMatrix::identity(d.system_dim);
    d.reduced_input().max_abs_diff(&id) <= tol
}

/// `D / N` plus a positivity flag; non-CP channels still produce a matrix.
#[derive(Clone, Debug)]
pub struct JamiolkowskiState {
    pub matrix: ComplexMatrix,
    pub min_eigenvalue: f64,
    /// False when `min_eigenvalue < -tol`, i.e. the matrix is not a state.
    pub is_state: bool,
}

pub fn jamiolkowski_state<C: AffineChannel + ?Sized>(ch: &C, tol: f64) -> JamiolkowskiState {
    let d = choi_from_channel(ch);
    let matrix = d.matrix.scale_real(1.0 / d.system_dim as f64);
    let min_eigenvalue = hermitian_eigenvalues(&matrix)[0];
    JamiolkowskiState {
        matrix,
        min_eigenvalue,
        is_state: min_eigenvalue >= -tol,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    pub system_dim: usize,
    pub operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `sum K^dagger K`.
    pub fn completeness(&self) -> ComplexMatrix {
        let n = self.system_dim;
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, k| {
                &acc + &(&k.adjoint() * k)
            })
    }

    /// `max|sum K^dagger K - I|`.
    pub fn completeness_residual(&self) -> f64 {
        self.completeness()
            .max_abs_diff(&ComplexMatrix::identity(self.system_dim))
    }

    pub fn to_document(&self) -> KrausDocument {
        KrausDocument {
            system_dim: self.system_dim,
            completeness_residual: self.completeness_residual(),
            operators: self
                .operators
                .iter()
                .map(|k| k.as_slice().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn from_document(doc: &KrausDocument) -> Result<Self> {
        let n = doc.system_dim;
        let operators = doc
            .operators
            .iter()
            .map(|entries| {
                if entries.len() != n * n {
                    return Err(Error::Dimension {
                        expected: format!("{} entries", n * n),
                        found: format!("{} entries", entries.len()),
                    });
                }
                Ok(ComplexMatrix::from_vec(
                    n,
                    n,
                    entries
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            system_dim: n,
            operators,
        })
    }
}

/// JSON layout for Kraus sets: each operator is a row-major list of
/// `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausDocument {
    pub system_dim: usize,
    pub completeness_residual: f64,
    pub operators: Vec<Vec<[f64; 2]>>,
}

/// Kraus operators from the spectral decomposition of `D`.
///
/// Each eigenpair `(mu, chi)` with `mu > tol` yields `K[a, i] = sqrt(mu) chi[a N + i]`.
pub fn kraus_from_choi(d: &ChoiMatrix, tol: f64) -> Result<KrausSet> {
    let n = d.system_dim;
    let eig = hermitian_eigen(&d.matrix);
    let min = eig.values[0];
    if min < -tol {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue: min,
        });
    }
    let operators = eig
        .values
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &mu)| mu > tol)
        .map(|(k, &mu)| {
            let s = mu.sqrt();
            ComplexMatrix::from_fn(n, n, |a, i| eig.vectors[(a * n + i, k)] * s)
        })
        .collect();
    Ok(KrausSet {
        system_dim: n,
        operators,
    })
}

/// `sum K rho K^dagger`.
pub fn apply_kraus(kraus: &KrausSet, rho: &ComplexMatrix) -> ComplexMatrix {
    let n = kraus.system_dim;
    kraus
        .operators
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, k| {
            &acc + &(&(k * rho) * &k.adjoint())
        })
}

//! SU(3) and SU(2) basis machinery.
//!
//! A qutrit state is written `rho = (I + sqrt(3) n·lambda) / 3` with the
//! eight Gell-Mann matrices normalised to `Tr(lambda_i lambda_j) = 2 delta_ij`.
//! Ordering: lambda_1, lambda_2 couple levels (0,1); lambda_4, lambda_5 couple
//! (0,2); lambda_6, lambda_7 couple (1,2); lambda_3 and lambda_8 are diagonal.
//! Index 0 is `sqrt(2/3) I`, which keeps the orthogonality relation for the
//! full nine-element basis.
//!
//! A qubit state is `rho = (I + b·sigma) / 2`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{validate_density, ComplexMatrix, I, ONE, ZERO};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Tolerance for structural checks on density matrices.
pub const STRUCTURAL_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn build_gellmann(index: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3, 3);
    match index {
        0 => return ComplexMatrix::identity(3).scale_real((2.0f64 / 3.0).sqrt()),
        1 => {
            m[(0, 1)] = ONE;
            m[(1, 0)] = ONE;
        }
        2 => {
            m[(0, 1)] = -I;
            m[(1, 0)] = I;
        }
        3 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = -ONE;
        }
        4 => {
            m[(0, 2)] = ONE;
            m[(2, 0)] = ONE;
        }
        5 => {
            m[(0, 2)] = -I;
            m[(2, 0)] = I;
        }
        6 => {
            m[(1, 2)] = ONE;
            m[(2, 1)] = ONE;
        }
        7 => {
            m[(1, 2)] = -I;
            m[(2, 1)] = I;
        }
        8 => {
            m[(0, 0)] = c(1.0 / SQRT3);
            m[(1, 1)] = c(1.0 / SQRT3);
            m[(2, 2)] = c(-2.0 / SQRT3);
        }
        _ => unreachable!(),
    }
    m
}

/// The nine basis matrices `lambda_0 .. lambda_8`, built once.
pub fn gellmann_basis() -> &'static [ComplexMatrix; 9] {
    static BASIS: OnceLock<[ComplexMatrix; 9]> = OnceLock::new();
    BASIS.get_or_init(|| std::array::from_fn(build_gellmann))
}

pub fn gellmann_matrix(index: usize) -> Result<ComplexMatrix> {
    if index > 8 {
        return Err(Error::IndexOutOfRange {
            index,
            min: 0,
            max: 8,
        });
    }
    Ok(gellmann_basis()[index].clone())
}

/// Identity and the three Pauli matrices, `sigma_0 .. sigma_3`.
pub fn pauli_basis() -> &'static [ComplexMatrix; 4] {
    static BASIS: OnceLock<[ComplexMatrix; 4]> = OnceLock::new();
    BASIS.get_or_init(|| {
        [
            ComplexMatrix::identity(2),
            ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]),
            ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]),
            ComplexMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, -ONE]),
        ]
    })
}

pub fn pauli_matrix(index: usize) -> Result<ComplexMatrix> {
    if index > 3 {
        return Err(Error::IndexOutOfRange {
            index,
            min: 0,
            max: 3,
        });
    }
    Ok(pauli_basis()[index].clone())
}

// Non-zero d_ijk with i <= j <= k (1-based), the standard SU(3) table.
const D_TABLE: [(usize, usize, usize, f64); 16] = [
    (1, 1, 8, 1.0 / SQRT3),
    (2, 2, 8, 1.0 / SQRT3),
    (3, 3, 8, 1.0 / SQRT3),
    (8, 8, 8, -1.0 / SQRT3),
    (4, 4, 8, -0.5 / SQRT3),
    (5, 5, 8, -0.5 / SQRT3),
    (6, 6, 8, -0.5 / SQRT3),
    (7, 7, 8, -0.5 / SQRT3),
    (1, 4, 6, 0.5),
    (1, 5, 7, 0.5),
    (2, 5, 6, 0.5),
    (3, 4, 4, 0.5),
    (3, 5, 5, 0.5),
    (2, 4, 7, -0.5),
    (3, 6, 6, -0.5),
    (3, 7, 7, -0.5),
];

fn d_tensor() -> &'static [[[f64; 8]; 8]; 8] {
    static D: OnceLock<[[[f64; 8]; 8]; 8]> = OnceLock::new();
    D.get_or_init(|| {
        let mut d = [[[0.0; 8]; 8]; 8];
        for &(i, j, k, v) in &D_TABLE {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (a, b, cc) in [
                (i, j, k),
                (i, k, j),
                (j, i, k),
                (j, k, i),
                (k, i, j),
                (k, j, i),
            ] {
                d[a][b][cc] = v;
            }
        }
        d
    })
}

/// Totally symmetric structure constant `d_ijk`, indices 1..=8.
pub fn d_coefficient(i: usize, j: usize, k: usize) -> Result<f64> {
    for index in [i, j, k] {
        if !(1..=8).contains(&index) {
            return Err(Error::IndexOutOfRange {
                index,
                min: 1,
                max: 8,
            });
        }
    }
    Ok(d_tensor()[i - 1][j - 1][k - 1])
}

/// Generalized Bloch vector of a qutrit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVector8(pub [f64; 8]);

/// Bloch vector `(u, v, w)` of a qubit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVector3(pub [f64; 3]);

impl BlochVector8 {
    pub const ZERO: Self = Self([0.0; 8]);

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn star(&self, other: &Self) -> Self {
        star_product(self, other)
    }
}

impl BlochVector3 {
    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// Symmetric star product `(a*b)_i = sqrt(3) d_ijk a_j b_k`.
///
/// The `sqrt(3)` factor matches the `sqrt(3)` in the density parametrisation,
/// so that every pure state satisfies `n*n = n`.
pub fn star_product(a: &BlochVector8, b: &BlochVector8) -> BlochVector8 {
    let d = d_tensor();
    let mut out = [0.0; 8];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (dij, &aj) in d[i].iter().zip(&a.0) {
            if aj != 0.0 {
                acc += aj * dij.iter().zip(&b.0).map(|(d, bk)| d * bk).sum::<f64>();
            }
        }
        *slot = SQRT3 * acc;
    }
    BlochVector8(out)
}

/// `rho = (I + sqrt(3) n·lambda) / 3`. Hermitian with unit trace for any
/// real `n`; positive only for physical `n`.
pub fn density_from_bloch(n: &BlochVector8) -> ComplexMatrix {
    let basis = gellmann_basis();
    let mut rho = ComplexMatrix::identity(3);
    for (i, &ni) in n.0.iter().enumerate() {
        if ni != 0.0 {
            rho = &rho + &basis[i + 1].scale_real(SQRT3 * ni);
        }
    }
    rho.scale_real(1.0 / 3.0)
}

/// Inverse of [`density_from_bloch`]: `n_i = (sqrt(3)/2) Tr(rho lambda_i)`.
pub fn bloch_from_density(rho: &ComplexMatrix) -> Result<BlochVector8> {
    validate_density(rho, 3, STRUCTURAL_TOL)?;
    Ok(bloch_components(rho))
}

/// `(sqrt(3)/2) Tr(x lambda_i)` real parts, no validation.
pub(crate) fn bloch_components(x: &ComplexMatrix) -> BlochVector8 {
    let basis = gellmann_basis();
    BlochVector8(std::array::from_fn(|i| {
        0.5 * SQRT3 * trace_of_product(x, &basis[i + 1]).re
    }))
}

/// `Tr(a b)` without forming the product.
pub(crate) fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.rows();
    let mut acc = ZERO;
    for r in 0..n {
        for k in 0..n {
            acc += a[(r, k)] * b[(k, r)];
        }
    }
    acc
}

pub fn density_from_bloch3(b: &BlochVector3) -> ComplexMatrix {
    let basis = pauli_basis();
    let mut rho = ComplexMatrix::identity(2);
    for (i, &bi) in b.0.iter().enumerate() {
        rho = &rho + &basis[i + 1].scale_real(bi);
    }
    rho.scale_real(0.5)
}

pub fn bloch3_from_density(rho: &ComplexMatrix) -> Result<BlochVector3> {
    validate_density(rho, 2, STRUCTURAL_TOL)?;
    let basis = pauli_basis();
    Ok(BlochVector3(std::array::from_fn(|i| {
        trace_of_product(rho, &basis[i + 1]).re
    })))
}

/// Angles of the four-parameter pure-state family
/// `e^{i chi1} sin(theta) cos(phi)|0> + e^{i chi2} sin(theta) sin(phi)|1> + cos(theta)|2>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureStateParams {
    pub theta: f64,
    pub phi: f64,
    pub chi1: f64,
    pub chi2: f64,
}

impl PureStateParams {
    fn validate(&self) -> Result<()> {
        let check = |name: &str, value: f64, upper: f64| {
            if (0.0..upper).contains(&value) {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "{name} = {value} outside [0, {upper})"
                )))
            }
        };
        check("theta", self.theta, FRAC_PI_2)?;
        check("phi", self.phi, FRAC_PI_2)?;
        check("chi1", self.chi1, 2.0 * PI)?;
        check("chi2", self.chi2, 2.0 * PI)
    }
}

/// Unit state vector (3x1) of the pure-state family.
pub fn pure_state(p: &PureStateParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    Ok(ComplexMatrix::column(&[
        Complex64::from_polar(st * cp, p.chi1),
        Complex64::from_polar(st * sp, p.chi2),
        c(ct),
    ]))
}

/// `|psi><psi|` for a column vector.
pub fn projector(ket: &ComplexMatrix) -> ComplexMatrix {
    ket * &ket.adjoint()
}

/// Pure-state test: `|n·n - 1| <= tol` and `max|n*n - n| <= tol`.
pub fn is_pure(n: &BlochVector8, tol: f64) -> bool {
    (n.norm_sq() - 1.0).abs() <= tol && star_product(n, n).max_abs_diff(n) <= tol
}

/// Coherent vector `(u12, u23, u13, v12, v23, v13, w1, w2)` of a three-level
/// density matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoherentVector {
    pub u12: f64,
    pub u23: f64,
    pub u13: f64,
    pub v12: f64,
    pub v23: f64,
    pub v13: f64,
    pub w1: f64,
    pub w2: f64,
}

impl CoherentVector {
    pub fn to_array(&self) -> [f64; 8] {
        [
            self.u12, self.u23, self.u13, self.v12, self.v23, self.v13, self.w1, self.w2,
        ]
    }

    pub fn from_array(s: [f64; 8]) -> Self {
        let [u12, u23, u13, v12, v23, v13, w1, w2] = s;
        Self {
            u12,
            u23,
            u13,
            v12,
            v23,
            v13,
            w1,
            w2,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_array().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

// Level pairs (j, k), 0-based, in coherent-vector order 12, 23, 13.
const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// `u_jk = rho_jk + rho_kj`, `v_jk = i(rho_jk - rho_kj)`,
/// `w_l = -sqrt(2/(l(l+1))) (rho_11 + .. + rho_ll - l rho_{l+1,l+1})`.
pub fn coherent_from_density(rho: &ComplexMatrix) -> Result<CoherentVector> {
    validate_density(rho, 3, STRUCTURAL_TOL)?;
    let u = PAIRS.map(|(j, k)| (rho[(j, k)] + rho[(k, j)]).re);
    let v = PAIRS.map(|(j, k)| (I * (rho[(j, k)] - rho[(k, j)])).re);
    let d = [rho[(0, 0)].re, rho[(1, 1)].re, rho[(2, 2)].re];
    let w1 = -(d[0] - d[1]);
    let w2 = -(1.0 / SQRT3) * (d[0] + d[1] - 2.0 * d[2]);
    Ok(CoherentVector {
        u12: u[0],
        u23: u[1],
        u13: u[2],
        v12: v[0],
        v23: v[1],
        v13: v[2],
        w1,
        w2,
    })
}

/// Reassembles the unit-trace density matrix described by a coherent vector.
pub fn density_from_coherent(s: &CoherentVector) -> ComplexMatrix {
    // rho_00 - rho_11 = -w1, rho_00 + rho_11 - 2 rho_22 = -sqrt(3) w2, trace 1
    let diff = -s.w1;
    let lower = -SQRT3 * s.w2;
    let d2 = (1.0 - lower) / 3.0;
    let upper_sum = 1.0 - d2;
    let d0 = 0.5 * (upper_sum + diff);
    let d1 = 0.5 * (upper_sum - diff);

    let mut rho = ComplexMatrix::from_real_diagonal(&[d0, d1, d2]);
    let us = [s.u12, s.u23, s.u13];
    let vs = [s.v12, s.v23, s.v13];
    for (p, &(j, k)) in PAIRS.iter().enumerate() {
        let z = Complex64::new(0.5 * us[p], -0.5 * vs[p]);
        rho[(j, k)] = z;
        rho[(k, j)] = z.conj();
    }
    rho
}

pub fn bloch_from_coherent(s: &CoherentVector) -> BlochVector8 {
    bloch_components(&density_from_coherent(s))
}

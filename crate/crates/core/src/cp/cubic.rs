//! Cubic polynomials for the three coupled Choi eigenvalues of a diagonal
//! qutrit channel.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::channels::AffineChannelQutrit;
use crate::choi::choi_from_channel;
use crate::error::{Error, Result};

/// `|f| <= DEGENERATE_TOL` marks a repeated root.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// `A x^3 + B x^2 + C x + D`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub leading: f64,
    pub quadratic: f64,
    pub linear: f64,
    pub constant: f64,
}

/// `x^3 + a x^2 + b x + c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonicCubic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CubicCoefficients {
    pub fn monic(&self) -> MonicCubic {
        MonicCubic {
            a: self.quadratic / self.leading,
            b: self.linear / self.leading,
            c: self.constant / self.leading,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.leading * x + self.quadratic) * x + self.linear) * x + self.constant
    }
}

impl MonicCubic {
    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.a) * x + self.b) * x + self.c
    }

    fn derivative(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.a) * x + self.b
    }

    /// `A, B, C, D` with leading coefficient `scale`.
    pub fn scaled(&self, scale: f64) -> CubicCoefficients {
        CubicCoefficients {
            leading: scale,
            quadratic: scale * self.a,
            linear: scale * self.b,
            constant: scale * self.c,
        }
    }

    pub fn discriminant(&self) -> f64 {
        discriminant_f(self.a, self.b, self.c)
    }
}

/// The printed polynomial for the three coupled eigenvalues, transcribed
/// term by term. Its roots are three times the Choi eigenvalues.
///
/// Note: along `Lambda_i = lambda` the constant term comes out as
/// `-8 - 48 lambda + 120 lambda^2 - 68 lambda^3`, while the Choi spectrum
/// `{1 + 8 lambda, 1 - lambda, 1 - lambda}` needs `-64 lambda^3`. Use
/// [`cubic_coefficients_derived`] for decisions.
pub fn cubic_coefficients_printed(lambda: &[f64; 8]) -> CubicCoefficients {
    let [l1, l2, l3, l4, l5, l6, l7, l8] = *lambda;
    let s38 = l3 + l8;
    let p12 = l1 + l2;
    let p45 = l4 + l5;
    let p67 = l6 + l7;
    let mix = s38 * s38 - p12 * p12 - p45 * p45 - p67 * p67;

    let leading = 8.0;
    let quadratic = -24.0 * (1.0 + l3 + l8);
    let linear = 18.0 * mix + 24.0 * (1.0 + 2.0 * l3 + 2.0 * l8 + l3 * l8);
    let constant = -8.0 - 18.0 * mix + 27.0 * l3 * (p45 * p45 + p67 * p67) - 54.0 * p12 * p45 * p67
        + 9.0 * l8 * (4.0 * p12 * p12 + p45 * p45 + p67 * p67)
        - 24.0 * (l8 + l3 + l3 * l8)
        - 4.0 * l8 * s38 * s38
        - 32.0 * l8 * l3 * l3
        - 20.0 * l8 * l8 * l3;
    CubicCoefficients {
        leading,
        quadratic,
        linear,
        constant,
    }
}

/// Rows/columns of the `|ii>` vectors in the 9x9 Choi matrix.
pub(crate) const DIAGONAL_BLOCK: [usize; 3] = [0, 4, 8];

/// Characteristic polynomial (in `x = 3 d`) of the Choi block spanned by
/// `|00>, |11>, |22>`, which carries the three eigenvalues not covered by
/// the linear conditions. Read off via `a = -tr M`,
/// `b = (tr(M)^2 - tr(M^2)) / 2`, `c = -det M` for `M = 3 D|block`.
pub fn cubic_coefficients_derived(lambda: &[f64; 8]) -> MonicCubic {
    let d = choi_from_channel(&AffineChannelQutrit::diagonal(*lambda));
    let block = d
        .matrix
        .principal_submatrix(&DIAGONAL_BLOCK)
        .scale_real(3.0);
    let tr = block.trace().re;
    let tr_sq = (&block * &block).trace().re;
    let det = block.determinant().re;
    MonicCubic {
        a: -tr,
        b: 0.5 * (tr * tr - tr_sq),
        c: -det,
    }
}

/// `f(a,b,c) = 3^-6 (3b - a^2)^3 + 54^-2 (9ab - 27c - 2a^3)^2`.
/// Non-positive exactly when all three roots are real; zero at a repeated root.
pub fn discriminant_f(a: f64, b: f64, c: f64) -> f64 {
    let p = 3.0 * b - a * a;
    let q = 9.0 * a * b - 27.0 * c - 2.0 * a * a * a;
    p * p * p / 729.0 + q * q / 2916.0
}

fn discriminant_scale(a: f64, b: f64, c: f64) -> f64 {
    let p = 3.0 * b - a * a;
    let q = 9.0 * a * b - 27.0 * c - 2.0 * a * a * a;
    (p * p * p / 729.0).abs() + q * q / 2916.0
}

/// Three real roots of `x^3 + a x^2 + b x + c`, ascending, by the
/// trigonometric method followed by a Newton polish.
///
/// Fails when `f` is positive beyond rounding (a complex-conjugate pair).
pub fn real_cubic_roots(cubic: &MonicCubic) -> Result<[f64; 3]> {
    let MonicCubic { a, b, c } = *cubic;
    let f = discriminant_f(a, b, c);
    if !f.is_finite() {
        return Err(Error::ComplexRoots(f));
    }
    if f > DEGENERATE_TOL * discriminant_scale(a, b, c).max(1.0) {
        return Err(Error::ComplexRoots(f));
    }

    // depressed form y^3 + p y + q with x = y - a/3
    let shift = -a / 3.0;
    let p = (3.0 * b - a * a) / 3.0;
    let q = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 27.0;

    let mut roots = if p >= 0.0 {
        // f <= 0 forces p <= 0; p >= 0 here means p == q == 0 up to rounding
        [shift; 3]
    } else {
        let radius = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        std::array::from_fn(|k| shift + radius * (phi - 2.0 * PI * k as f64 / 3.0).cos())
    };

    for r in roots.iter_mut() {
        *r = polish(cubic, *r);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn polish(cubic: &MonicCubic, mut x: f64) -> f64 {
    let mut fx = cubic.eval(x).abs();
    for _ in 0..4 {
        let d = cubic.derivative(x);
        if d == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - cubic.eval(x) / d;
        let fn_ = cubic.eval(next).abs();
        if fn_.is_nan() || fn_ >= fx {
            break;
        }
        x = next;
        fx = fn_;
    }
    x
}

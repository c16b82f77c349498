//! Time-domain tools: exponential damping paths with CP monitoring, and
//! fixed-step RK4 integration of two- and three-level Bloch equations.

use serde::{Deserialize, Serialize};

use crate::channels::AffineChannelQutrit;
use crate::cp::cp_numeric;
use crate::error::{Error, Result};
use crate::gellmann::{BlochVector3, CoherentVector};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Bisection stops once the bracket is this narrow.
pub const VIOLATION_RESOLUTION: f64 = 1e-6;

/// Rates `gamma_i` of `dn_i/dt = gamma_i n_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DampingRates(pub [f64; 8]);

/// Diagonal channel with `Lambda_i = exp(gamma_i * time)`.
pub fn damping_channel_at(rates: &DampingRates, time: f64) -> Result<AffineChannelQutrit> {
    if time.is_nan() || time < 0.0 {
        return Err(Error::Domain(format!(
            "time must be non-negative, got {time}"
        )));
    }
    Ok(AffineChannelQutrit::diagonal(
        rates.0.map(|g| (g * time).exp()),
    ))
}

/// First time on `[0, t_max]` at which the damping channel stops being CP.
///
/// Samples `steps` evenly spaced times (endpoints included), then bisects
/// between the last CP sample and the first failing one down to
/// [`VIOLATION_RESOLUTION`]. Returns the failing end of the final bracket.
pub fn cp_first_violation(
    rates: &DampingRates,
    t_max: f64,
    steps: usize,
    tol: f64,
) -> Result<Option<f64>> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::Domain(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain(format!("need at least 2 steps, got {steps}")));
    }
    let is_cp = |time: f64| -> Result<bool> {
        Ok(cp_numeric(&damping_channel_at(rates, time)?, tol).is_cp)
    };

    let grid = |k: usize| t_max * k as f64 / (steps - 1) as f64;
    let mut first_bad = None;
    for k in 0..steps {
        if !is_cp(grid(k))? {
            first_bad = Some(k);
            break;
        }
    }
    let Some(k) = first_bad else {
        return Ok(None);
    };
    if k == 0 {
        return Ok(Some(0.0));
    }
    let (mut lo, mut hi) = (grid(k - 1), grid(k));
    while hi - lo > VIOLATION_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if is_cp(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

/// Couplings of the three-level system: `alpha`, `beta` (Rabi-frequency
/// related) and common detuning `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeLevelParams {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

/// Right-hand side of the three-level Bloch equations for the coherent
/// vector `(u12, u23, u13, v12, v23, v13, w1, w2)`.
pub fn three_level_rhs(s: &CoherentVector, p: &ThreeLevelParams) -> CoherentVector {
    let ThreeLevelParams { alpha, beta, delta } = *p;
    CoherentVector {
        u12: delta * s.v12 + beta * s.v13,
        u23: -delta * s.v23 - alpha * s.v13,
        u13: beta * s.v12 - alpha * s.v23,
        v12: -delta * s.u12 - beta * s.u13 + 2.0 * alpha * s.w1,
        v23: delta * s.u23 + alpha * s.u13 - beta * s.w1 + SQRT3 * beta * s.w2,
        v13: -beta * s.u12 + alpha * s.u23,
        w1: -2.0 * alpha * s.v12 + beta * s.v23,
        w2: -SQRT3 * beta * s.v23,
    }
}

/// Decay times (use `f64::INFINITY` for no damping), detuning, Rabi
/// frequency, and equilibrium inversion of a two-level atom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitBlochParams {
    pub t_u: f64,
    pub t_v: f64,
    pub t_w: f64,
    pub delta: f64,
    pub omega: f64,
    pub w_eq: f64,
}

/// Two-level Bloch equations.
///
/// The inversion equation uses the rotation term `-omega * v`. Writing
/// `-omega * w` there instead would leave the damping-free generator
/// non-antisymmetric and the Bloch vector length would not be conserved.
pub fn qubit_bloch_rhs(b: &BlochVector3, p: &QubitBlochParams) -> BlochVector3 {
    let [u, v, w] = b.0;
    BlochVector3([
        -u / p.t_u - p.delta * v,
        -v / p.t_v + p.delta * u + p.omega * w,
        -(w - p.w_eq) / p.t_w - p.omega * v,
    ])
}

/// Classic fixed-step fourth-order Runge–Kutta for an autonomous system.
///
/// Returns the state at `t = 0, dt, 2 dt, ...`; when `t_final` is not a
/// whole number of steps the last step is shortened to land on it.
pub fn integrate<const N: usize, F>(
    rhs: F,
    state0: [f64; N],
    t_final: f64,
    dt: f64,
) -> Result<Vec<(f64, [f64; N])>>
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Domain(format!(
            "step size must be positive, got {dt}"
        )));
    }
    if !t_final.is_finite() || t_final < 0.0 {
        return Err(Error::Domain(format!(
            "final time must be non-negative, got {t_final}"
        )));
    }
    let ratio = t_final / dt;
    let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
        ratio.round()
    } else {
        ratio.ceil()
    } as usize;

    let axpy = |y: &[f64; N], h: f64, k: &[f64; N]| -> [f64; N] {
        std::array::from_fn(|i| y[i] + h * k[i])
    };

    let mut out = Vec::with_capacity(steps + 1);
    let mut y = state0;
    out.push((0.0, y));
    for k in 0..steps {
        let t0 = k as f64 * dt;
        let t1 = if k + 1 == steps {
            t_final
        } else {
            (k + 1) as f64 * dt
        };
        let h = t1 - t0;
        let k1 = rhs(&y);
        let k2 = rhs(&axpy(&y, 0.5 * h, &k1));
        let k3 = rhs(&axpy(&y, 0.5 * h, &k2));
        let k4 = rhs(&axpy(&y, h, &k3));
        y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        out.push((t1, y));
    }
    Ok(out)
}

/// Integrates the three-level equations from `s0`.
pub fn evolve_three_level(
    s0: &CoherentVector,
    p: &ThreeLevelParams,
    t_final: f64,
    dt: f64,
) -> Result<Vec<(f64, CoherentVector)>> {
    let traj = integrate(
        |y: &[f64; 8]| three_level_rhs(&CoherentVector::from_array(*y), p).to_array(),
        s0.to_array(),
        t_final,
        dt,
    )?;
    Ok(traj
        .into_iter()
        .map(|(t, y)| (t, CoherentVector::from_array(y)))
        .collect())
}

/// Integrates the two-level equations from `b0`.
pub fn evolve_qubit(
    b0: &BlochVector3,
    p: &QubitBlochParams,
    t_final: f64,
    dt: f64,
) -> Result<Vec<(f64, BlochVector3)>> {
    let traj = integrate(
        |y: &[f64; 3]| qubit_bloch_rhs(&BlochVector3(*y), p).0,
        b0.0,
        t_final,
        dt,
    )?;
    Ok(traj
        .into_iter()
        .map(|(t, y)| (t, BlochVector3(y)))
        .collect())
}

/// CSV with header `t,<names...>` and 17 significant digits per value.
pub fn trajectory_csv<const N: usize>(traj: &[(f64, [f64; N])], names: &[&str; N]) -> String {
    let mut out = String::from("t");
    for name in names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (t, y) in traj {
        out.push_str(&format!("{t:.16e}"));
        for v in y {
            out.push_str(&format!(",{v:.16e}"));
        }
        out.push('\n');
    }
    out
}

pub const THREE_LEVEL_COLUMNS: [&str; 8] = ["s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8"];
pub const QUBIT_COLUMNS: [&str; 3] = ["u", "v", "w"];

//! Complete-positivity analysis of affine qutrit and qubit channels acting on
//! generalized Bloch vectors.
//!
//! A channel `n -> Lambda n + t` (diagonal `Lambda`) is turned into its
//! dynamical (Choi) matrix and tested for positive semidefiniteness. For
//! diagonal qutrit channels the same decision is also available in closed
//! form: six linear inequalities plus the three roots of a cubic. The
//! [`scan`] module sweeps two-parameter slices of channel space and renders
//! the CP region as CSV or PGM.

pub mod channels;
pub mod choi;
pub mod cli;
pub mod cp;
pub mod dynamics;
pub mod error;
pub mod gellmann;
pub mod linalg;
pub mod scan;

pub use channels::{AffineChannel, AffineChannelQubit, AffineChannelQutrit};
pub use choi::{
    apply_kraus, choi_from_channel, is_trace_preserving, jamiolkowski_state, kraus_from_choi,
    ChoiMatrix, KrausSet,
};
pub use cp::{cp_analytic_diagonal, cp_numeric, CpMethod, CpVerdict};
pub use error::{Error, Result};
pub use gellmann::{BlochVector3, BlochVector8, CoherentVector, PureStateParams};
pub use linalg::ComplexMatrix;

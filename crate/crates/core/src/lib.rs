//! Pairwise quantum correlations of balanced superpositions of multipartite
//! coherent states.
//!
//! A state `N (|Ω_1 … Ω_n> + e^{imπ} |Ω'_1 … Ω'_n>)` is described by the
//! single-mode overlaps `p_i = <Ω_i|Ω'_i>` and the parity of `m`
//! ([`SuperpositionSpec`]). From it the crate builds the pure `k | n-k` split
//! and the mixed two-mode marginals as two-qubit states, and evaluates
//! geometric discord and concurrence in closed form, numerically, and by a
//! brute-force oracle, including their decay under a dephasing channel.
//!
//! Mode indices are 0-based throughout the library.

// `!(x <= tol)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod dephasing;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod state;

pub use correlations::{Branch, CorrelationReport, MeasurementSide};
pub use dephasing::{DephasingParams, SuddenDeathTime};
pub use error::{Error, Result};
pub use kernels::Family;
pub use state::{BlochForm, Parity, PureSplit, SuperpositionSpec, TwoQubitDensity};

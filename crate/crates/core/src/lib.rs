//! Energy beamforming for multi-user MISO wireless power transfer under
//! per-antenna power constraints (PAC).
//!
//! An N-antenna energy transmitter serves K single-antenna energy receivers
//! over a channel `H` (K×N). The sum harvested power for a transmit covariance
//! `Q` is `tr(H Q Hᴴ)`. Under per-antenna budgets `q_ii ≤ p_i` the solvers
//! search rank-one beams `w` with `|w_i| = √p_i`, so only the N−1 relative
//! phases need to be found. A KKT dual certificate then decides whether the
//! beam is optimal over all covariances. For N ≤ 3 it always is; for larger N
//! the optimum can have higher rank, and the certificate reports that case
//! instead of hiding it. This crate provides
//!
//! * [`linalg`]: the small dense complex linear algebra everything else needs
//!   (Gram matrix, Hermitian Jacobi eigensolver, harvested-power evaluation),
//! * [`channel`]: reproducible random scenarios (placement, path loss, Rayleigh
//!   fading) and the plain-text matrix file format,
//! * [`beamformers`]: the PAC optimum via the phase stationarity system, its
//!   closed forms for N = 2 and K = 1, two closed-form heuristics, and the
//!   sum-power, independent and random-phase baselines,
//! * [`oracle`]: the KKT dual certificate, a brute-force phase grid search and
//!   PSD checks,
//! * [`sim`]: Monte Carlo sweeps, timing and CSV reporting used by the
//!   `pabeam` binary.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beamformers;
pub mod channel;
mod error;
pub mod linalg;
pub mod oracle;
pub mod rng;
pub mod sim;

pub use error::{Error, Result};

//! Beamforming solvers and the types they share.
//!
//! Every per-antenna-constrained (PAC) solver here returns a rank-one
//! covariance `Q = w wᴴ` with `|w_i| = √p_i`; they differ only in how the
//! phases `θ` are chosen. The sum-power optimum and the independent
//! (diagonal) baseline are included for comparison.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use num_complex::Complex64;

use crate::linalg::{sum_harvested, ChannelMatrix, ComplexMatrix};
use crate::oracle::Certificate;
use crate::{Error, Result};

mod closed;
mod heuristic;
mod pac;
mod signal;

pub use closed::{solve_closed_k1, solve_closed_n2};
pub use heuristic::{
    independent_baseline, random_phase_baseline, solve_spc, suboptimal_1, suboptimal_2,
};
pub use pac::{
    phase_jacobian, phase_residual, solve_pac, solve_pac_with_gram, PhaseSystem, SolverOptions,
};
pub use signal::{empirical_covariance, synthesize_signal};

/// Per-antenna power limits `p_i` (watts) and their total `p_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerBudget {
    per_antenna: Vec<f64>,
    total: f64,
}

impl PowerBudget {
    pub fn new(per_antenna: Vec<f64>) -> Result<Self> {
        if per_antenna.is_empty() {
            return Err(Error::InvalidInput(
                "power budget needs at least one antenna".into(),
            ));
        }
        if let Some(bad) = per_antenna.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "per-antenna power must be > 0, got {bad}"
            )));
        }
        let total = per_antenna.iter().sum();
        Ok(Self { per_antenna, total })
    }

    /// `n` antennas sharing `total` equally.
    pub fn equal(total: f64, n: usize) -> Result<Self> {
        Self::new(vec![total / n as f64; n])
    }

    pub fn per_antenna(&self) -> &[f64] {
        &self.per_antenna
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn n(&self) -> usize {
        self.per_antenna.len()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.per_antenna.iter().map(|p| p * c).collect())
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor();
    // `y` is in [−π, π); move the closed end to the other side.
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// Beam phases with the gauge `θ_1 = 0`, each wrapped into `(−π, π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector(Vec<f64>);

impl PhaseVector {
    /// Gauge-fixes arbitrary phases by subtracting `θ_1`, then wraps.
    pub fn new(theta: &[f64]) -> Self {
        assert!(!theta.is_empty(), "phase vector needs at least one entry");
        let t0 = theta[0];
        let mut out: Vec<f64> = theta.iter().map(|t| wrap_phase(t - t0)).collect();
        out[0] = 0.0;
        Self(out)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// Phases of a beam; entries with magnitude `≤ 1e-14` get phase 0.
    pub fn from_directions(v: &[Complex64]) -> Self {
        let raw: Vec<f64> = v
            .iter()
            .map(|z| if z.norm() <= 1e-14 { 0.0 } else { z.arg() })
            .collect();
        Self::new(&raw)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A transmit beamforming vector.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamVector(pub Vec<Complex64>);

impl BeamVector {
    /// `w_i = √p_i e^{jθ_i}`.
    pub fn from_phases(theta: &PhaseVector, p: &PowerBudget) -> Self {
        assert_eq!(theta.len(), p.n(), "phase and power dimensions differ");
        Self(
            theta
                .as_slice()
                .iter()
                .zip(p.per_antenna())
                .map(|(&t, &pi)| Complex64::from_polar(pi.sqrt(), t))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }
}

/// Hermitian PSD transmit covariance `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix(pub ComplexMatrix);

impl CovarianceMatrix {
    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }
}

/// `Q = w wᴴ` for `w_i = √p_i e^{jθ_i}`, with the diagonal set to `p` exactly.
pub fn build_q(theta: &PhaseVector, p: &PowerBudget) -> CovarianceMatrix {
    let w = BeamVector::from_phases(theta, p);
    let mut q = ComplexMatrix::outer(w.as_slice());
    for (i, &pi) in p.per_antenna().iter().enumerate() {
        q[(i, i)] = Complex64::new(pi, 0.0);
    }
    CovarianceMatrix(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Spc,
    PacNewton,
    PacClosedN2,
    PacClosedK1,
    Sub1,
    Sub2,
    Independent,
    RandomPhase,
    GridOracle,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Spc,
        Method::PacNewton,
        Method::PacClosedN2,
        Method::PacClosedK1,
        Method::Sub1,
        Method::Sub2,
        Method::Independent,
        Method::RandomPhase,
        Method::GridOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Spc => "spc",
            Method::PacNewton => "pac_newton",
            Method::PacClosedN2 => "pac_closed_n2",
            Method::PacClosedK1 => "pac_closed_k1",
            Method::Sub1 => "sub1",
            Method::Sub2 => "sub2",
            Method::Independent => "independent",
            Method::RandomPhase => "random_phase",
            Method::GridOracle => "grid_oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    /// Whether the method returns a constant-modulus rank-one beam.
    pub fn is_pac_beam(self) -> bool {
        !matches!(self, Method::Spc | Method::Independent)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub method: Method,
    /// Present for constant-modulus beams.
    pub theta: Option<PhaseVector>,
    /// Absent only for the diagonal (independent) covariance.
    pub beam: Option<BeamVector>,
    pub q: CovarianceMatrix,
    /// `tr(H Q Hᴴ)` in watts.
    pub objective_w: f64,
    pub iterations: usize,
    /// Largest absolute phase stationarity residual (0 where not applicable).
    pub residual: f64,
    pub certified: bool,
    pub certificate: Option<Certificate>,
    /// Some off-diagonal Gram entry vanished, so the magnitude lemma does not
    /// force `|q_ij| = √(p_i p_j)` for that pair.
    pub zero_alpha: bool,
    /// Number of initial points the phase solver tried.
    pub starts: usize,
    pub wall_time_s: f64,
}

impl SolveReport {
    fn from_phases(
        method: Method,
        theta: PhaseVector,
        p: &PowerBudget,
        h: &ChannelMatrix,
    ) -> Result<Self> {
        let q = build_q(&theta, p);
        let objective_w = sum_harvested(q.as_matrix(), h)?;
        let beam = BeamVector::from_phases(&theta, p);
        Ok(Self {
            method,
            theta: Some(theta),
            beam: Some(beam),
            q,
            objective_w,
            iterations: 0,
            residual: 0.0,
            certified: false,
            certificate: None,
            zero_alpha: false,
            starts: 0,
            wall_time_s: 0.0,
        })
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time_s = start.elapsed().as_secs_f64();
        self
    }

    pub fn objective_mw(&self) -> f64 {
        self.objective_w * 1e3
    }
}

pub(crate) fn check_dims(h: &ChannelMatrix, p: &PowerBudget) -> Result<()> {
    if h.cols() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "channel has {} antennas but power budget has {}",
            h.cols(),
            p.n()
        )));
    }
    Ok(())
}

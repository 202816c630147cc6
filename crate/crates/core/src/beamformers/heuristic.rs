//! Closed-form heuristics and baselines.

use std::time::Instant;

use num_complex::Complex64;

use super::{
    check_dims, BeamVector, CovarianceMatrix, Method, PhaseVector, PowerBudget, SolveReport,
};
use crate::linalg::{
    dominant_eigenpair, gram, hermitian_eig, sum_harvested, ChannelMatrix, ComplexMatrix,
    GramMatrix, EIG_TOL,
};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Approximate dual matrix: off-diagonals `−α_ij`, diagonals
/// `Σ_{j≠i} √(p_j/p_i)|α_ij|` (all phase factors of the exact duals set to 1).
pub(crate) fn approx_dual(a: &GramMatrix, p: &PowerBudget) -> ComplexMatrix {
    let n = a.n();
    let pw = p.per_antenna();
    let mut b = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let mut d = 0.0;
        for j in 0..n {
            if j != i {
                b[(i, j)] = -a.get(i, j);
                d += (pw[j] / pw[i]).sqrt() * a.get(i, j).norm();
            }
        }
        b[(i, i)] = Complex64::new(d, 0.0);
    }
    b
}

pub(crate) fn sub1_phases(a: &GramMatrix, p: &PowerBudget) -> Result<PhaseVector> {
    let e = hermitian_eig(&approx_dual(a, p), EIG_TOL)?;
    Ok(PhaseVector::from_directions(&e.min().1))
}

/// Residual target for the dominant Gram eigenvector.
const POWER_TOL: f64 = 1e-13;

pub(crate) fn sub2_phases(a: &GramMatrix) -> Result<PhaseVector> {
    let (_, v) = dominant_eigenpair(a.as_matrix(), POWER_TOL)?;
    Ok(PhaseVector::from_directions(&v))
}

/// Phases of the smallest eigenvector of the approximate dual matrix.
pub fn suboptimal_1(h: &ChannelMatrix, p: &PowerBudget) -> Result<SolveReport> {
    check_dims(h, p)?;
    let start = Instant::now();
    let theta = sub1_phases(&gram(h), p)?;
    Ok(SolveReport::from_phases(Method::Sub1, theta, p, h)?.timed(start))
}

/// Phases of the dominant eigenvector of `HᴴH` (the sum-power beam direction)
/// with per-antenna amplitudes `√p_i`.
pub fn suboptimal_2(h: &ChannelMatrix, p: &PowerBudget) -> Result<SolveReport> {
    check_dims(h, p)?;
    let start = Instant::now();
    let theta = sub2_phases(&gram(h))?;
    Ok(SolveReport::from_phases(Method::Sub2, theta, p, h)?.timed(start))
}

/// Sum-power optimum `Q = p_t v₁v₁ᴴ`, objective `p_t ξ₁`.
pub fn solve_spc(h: &ChannelMatrix, p_total: f64) -> Result<SolveReport> {
    if !(p_total > 0.0) {
        return Err(Error::InvalidInput(format!(
            "total power must be positive, got {p_total}"
        )));
    }
    let start = Instant::now();
    let e = hermitian_eig(gram(h).as_matrix(), EIG_TOL)?;
    let (_, v) = e.max();
    let w: Vec<Complex64> = v.iter().map(|z| z * p_total.sqrt()).collect();
    let q = ComplexMatrix::outer(&w);
    let objective_w = sum_harvested(&q, h)?;
    Ok(SolveReport {
        method: Method::Spc,
        theta: None,
        beam: Some(BeamVector(w)),
        q: CovarianceMatrix(q),
        objective_w,
        iterations: 0,
        residual: 0.0,
        certified: false,
        certificate: None,
        zero_alpha: false,
        starts: 0,
        wall_time_s: 0.0,
    }
    .timed(start))
}

/// Uncorrelated antennas: `Q = diag(p)`.
pub fn independent_baseline(h: &ChannelMatrix, p: &PowerBudget) -> Result<SolveReport> {
    check_dims(h, p)?;
    let start = Instant::now();
    let q = ComplexMatrix::diag(p.per_antenna());
    let objective_w = sum_harvested(&q, h)?;
    Ok(SolveReport {
        method: Method::Independent,
        theta: None,
        beam: None,
        q: CovarianceMatrix(q),
        objective_w,
        iterations: 0,
        residual: 0.0,
        certified: false,
        certificate: None,
        zero_alpha: false,
        starts: 0,
        wall_time_s: 0.0,
    }
    .timed(start))
}

/// Constant-modulus beam with uniformly random phases (`θ_1 = 0`).
pub fn random_phase_baseline(
    h: &ChannelMatrix,
    p: &PowerBudget,
    rng: &mut RngStream,
) -> Result<SolveReport> {
    check_dims(h, p)?;
    let start = Instant::now();
    let mut t: Vec<f64> = (0..p.n()).map(|_| rng.phase()).collect();
    t[0] = 0.0;
    Ok(SolveReport::from_phases(Method::RandomPhase, PhaseVector::new(&t), p, h)?.timed(start))
}

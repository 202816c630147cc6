//! Closed-form PAC optima for two antennas and for a single receiver.

use std::time::Instant;

use super::{check_dims, Method, PhaseVector, PowerBudget, SolveReport};
use crate::linalg::{gram, ChannelMatrix};
use crate::oracle::certify_with_gram;
use crate::{Error, Result};

/// N = 2: `θ = (0, −∠α_12)`, objective `p₁α₁₁ + p₂α₂₂ + 2√(p₁p₂)|α₁₂|`.
pub fn solve_closed_n2(h: &ChannelMatrix, p: &PowerBudget) -> Result<SolveReport> {
    if h.cols() != 2 {
        return Err(Error::WrongDimension {
            expected: "N = 2 antennas",
            got: format!("N = {}", h.cols()),
        });
    }
    check_dims(h, p)?;
    let start = Instant::now();
    let a = gram(h);
    let a12 = a.get(0, 1);
    let t2 = if a12.norm() == 0.0 { 0.0 } else { -a12.arg() };
    let theta = PhaseVector::new(&[0.0, t2]);
    let cert = certify_with_gram(&theta, &a, p);
    let mut rep = SolveReport::from_phases(Method::PacClosedN2, theta, p, h)?;
    rep.certified = cert.valid;
    rep.certificate = Some(cert);
    rep.zero_alpha = a12.norm() == 0.0;
    Ok(rep.timed(start))
}

/// K = 1: `θ_i = ∠h_1 − ∠h_i`, objective `(Σ_i √p_i |h_i|)²`.
pub fn solve_closed_k1(h: &ChannelMatrix, p: &PowerBudget) -> Result<SolveReport> {
    if h.rows() != 1 {
        return Err(Error::WrongDimension {
            expected: "K = 1 receiver",
            got: format!("K = {}", h.rows()),
        });
    }
    check_dims(h, p)?;
    let start = Instant::now();
    let raw: Vec<f64> = h.row(0).iter().map(|z| -z.arg()).collect();
    let theta = PhaseVector::new(&raw);
    let cert = certify_with_gram(&theta, &gram(h), p);
    let mut rep = SolveReport::from_phases(Method::PacClosedK1, theta, p, h)?;
    rep.certified = cert.valid;
    rep.certificate = Some(cert);
    Ok(rep.timed(start))
}

//! Instance generators and independent reference computations shared by the
//! integration tests. Nothing here calls the solver internals it checks.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use pabeam::beamformers::{PhaseVector, PowerBudget};
use pabeam::linalg::ComplexMatrix;
use pabeam::rng::RngStream;

/// `K × N` channel with i.i.d. unit-variance complex Gaussian entries.
pub fn random_channel(rng: &mut RngStream, k: usize, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(k, n, |_, _| rng.complex_normal())
}

/// Per-antenna budgets drawn uniformly from `[0.1, 1]` W.
pub fn random_budget(rng: &mut RngStream, n: usize) -> PowerBudget {
    PowerBudget::new((0..n).map(|_| 0.1 + 0.9 * rng.uniform()).collect()).unwrap()
}

/// Integer uniform on `lo..=hi`.
pub fn pick(rng: &mut RngStream, lo: usize, hi: usize) -> usize {
    lo + ((rng.uniform() * (hi - lo + 1) as f64) as usize).min(hi - lo)
}

/// `‖H w‖²` for `w_i = √p_i e^{jθ_i}`, summed receiver by receiver.
pub fn beam_power(h: &ComplexMatrix, theta: &[f64], p: &[f64]) -> f64 {
    (0..h.rows())
        .map(|k| {
            h.row(k)
                .iter()
                .zip(theta.iter().zip(p))
                .map(|(hk, (&t, &pi))| hk * Complex64::from_polar(pi.sqrt(), t))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum()
}

/// Central-difference gradient of [`beam_power`] in every phase.
pub fn fd_gradient(h: &ComplexMatrix, theta: &[f64], p: &[f64], step: f64) -> Vec<f64> {
    (0..theta.len())
        .map(|i| {
            let mut up = theta.to_vec();
            let mut dn = theta.to_vec();
            up[i] += step;
            dn[i] -= step;
            (beam_power(h, &up, p) - beam_power(h, &dn, p)) / (2.0 * step)
        })
        .collect()
}

/// Largest componentwise distance between two phase vectors modulo 2π.
pub fn phase_distance(a: &PhaseVector, b: &PhaseVector) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d)
        })
        .fold(0.0, f64::max)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

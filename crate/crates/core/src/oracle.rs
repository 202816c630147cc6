//! Independent correctness checks for the beamforming solvers.
//!
//! The PAC problem is a convex SDP, so a primal point together with a dual
//! matrix `B = C − HᴴH` that is PSD and satisfies `BQ = 0` proves global
//! optimality. [`certify_optimality`] builds the only possible dual for a
//! given rank-one beam and checks both conditions. [`grid_search`] is a brute
//! force over the phase torus for N ≤ 4.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::beamformers::{
    wrap_phase, BeamVector, Method, PhaseSystem, PhaseVector, PowerBudget, SolveReport,
};
use crate::linalg::{
    gram, hermitian_eig, ChannelMatrix, ComplexMatrix, GramMatrix, EIG_TOL, HERMITIAN_TOL,
};
use crate::{Error, Result};

/// Relative PSD tolerance on the dual matrix.
pub const TOL_PSD: f64 = 1e-7;
/// Relative complementary-slackness tolerance.
pub const TOL_CS: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct Certificate {
    /// Dual matrix for the PSD constraint.
    pub b: ComplexMatrix,
    /// Multipliers of the per-antenna constraints, `c_i = α_ii + b_ii`.
    pub c: Vec<f64>,
    pub min_eig_b: f64,
    /// `‖BQ‖_F`.
    pub complementarity_norm: f64,
    /// Largest `|Im b_ii|` before the real part was taken.
    pub max_dual_imag: f64,
    pub valid: bool,
}

impl Certificate {
    /// Dual objective `Σ_i c_i p_i`; equals the primal objective at a valid
    /// certificate.
    pub fn dual_objective(&self, p: &PowerBudget) -> f64 {
        self.c.iter().zip(p.per_antenna()).map(|(c, p)| c * p).sum()
    }
}

/// Checks whether the rank-one beam with phases `theta` is a global optimum.
pub fn certify_optimality(theta: &PhaseVector, h: &ChannelMatrix, p: &PowerBudget) -> Certificate {
    certify_with_gram(theta, &gram(h), p)
}

/// [`certify_optimality`] with a precomputed Gram matrix.
pub fn certify_with_gram(theta: &PhaseVector, a: &GramMatrix, p: &PowerBudget) -> Certificate {
    let n = a.n();
    let w = BeamVector::from_phases(theta, p);
    let w = w.as_slice();

    // Row i of B w = 0 forces b_ii = Σ_{j≠i} α_ij w_j / w_i.
    let mut b = ComplexMatrix::zeros(n, n);
    let mut max_dual_imag: f64 = 0.0;
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = Complex64::new(0.0, 0.0);
        for j in 0..n {
            if j != i {
                z += a.get(i, j) * w[j];
                b[(i, j)] = -a.get(i, j);
            }
        }
        let z = z / w[i];
        max_dual_imag = max_dual_imag.max(z.im.abs());
        b[(i, i)] = Complex64::new(z.re, 0.0);
        c.push(a.get(i, i).re + z.re);
    }

    let b_norm = b.frobenius_norm();
    let min_eig_b = match hermitian_eig(&b, EIG_TOL) {
        Ok(e) => e.min().0,
        Err(_) => f64::NEG_INFINITY,
    };
    // B Q = (B w) wᴴ, so ‖BQ‖_F = ‖Bw‖ ‖w‖.
    let bw = b.mul_vec(w);
    let w_norm = w.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let complementarity_norm = bw.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt() * w_norm;
    let q_norm = w_norm * w_norm;

    let valid = min_eig_b >= -TOL_PSD * b_norm
        && complementarity_norm <= TOL_CS * b_norm * q_norm
        && max_dual_imag <= TOL_CS * b_norm;
    Certificate {
        b,
        c,
        min_eig_b,
        complementarity_norm,
        max_dual_imag,
        valid,
    }
}

/// Default coarse grid step (rad).
pub const GRID_COARSE_STEP: f64 = 0.05;
/// Default number of ×10 refinement rounds.
pub const GRID_REFINE_ROUNDS: usize = 4;
/// Largest antenna count the grid accepts.
pub const GRID_MAX_N: usize = 4;

/// Outcome of [`grid_search_trace`]: the report plus the best objective after
/// the coarse pass and after each refinement round.
#[derive(Clone, Debug)]
pub struct GridTrace {
    pub report: SolveReport,
    pub round_objectives: Vec<f64>,
    pub final_step: f64,
}

/// Brute-force maximization of the constant-modulus objective over the phase
/// torus (`θ_1 = 0`), followed by `refine_rounds` zooms around the incumbent,
/// each shrinking the step tenfold.
pub fn grid_search(
    h: &ChannelMatrix,
    p: &PowerBudget,
    coarse_step: f64,
    refine_rounds: usize,
) -> Result<SolveReport> {
    grid_search_trace(h, p, coarse_step, refine_rounds).map(|t| t.report)
}

pub fn grid_search_trace(
    h: &ChannelMatrix,
    p: &PowerBudget,
    coarse_step: f64,
    refine_rounds: usize,
) -> Result<GridTrace> {
    let n = p.n();
    if n > GRID_MAX_N {
        return Err(Error::TooLarge(format!(
            "grid search supports N <= {GRID_MAX_N}, got {n}"
        )));
    }
    if h.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "channel has {} antennas but power budget has {n}",
            h.cols()
        )));
    }
    if !(coarse_step > 0.0 && coarse_step < PI) {
        return Err(Error::InvalidInput(format!(
            "coarse step must be in (0, π), got {coarse_step}"
        )));
    }
    let start = std::time::Instant::now();
    let sys = PhaseSystem::new(&gram(h), p);
    let free = n - 1;

    let (mut best_theta, mut best_obj, mut step) = if free == 0 {
        (vec![0.0], sys.objective(&[0.0]), coarse_step)
    } else {
        let points = (2.0 * PI / coarse_step).ceil() as usize;
        let step = 2.0 * PI / points as f64;
        let axis: Vec<f64> = (0..points).map(|k| -PI + k as f64 * step).collect();
        let (t, f) = search_box(&sys, &vec![axis; free]);
        (t, f, step)
    };
    let mut round_objectives = vec![best_obj];
    let mut evaluations = 0;

    for _ in 0..refine_rounds {
        if free == 0 {
            round_objectives.push(best_obj);
            continue;
        }
        let fine = step / 10.0;
        // ±2 coarse steps around the incumbent.
        let axes: Vec<Vec<f64>> = (1..n)
            .map(|i| {
                (-20..=20)
                    .map(|k| best_theta[i] + k as f64 * fine)
                    .collect()
            })
            .collect();
        let (t, f) = search_box(&sys, &axes);
        if f > best_obj {
            best_theta = t;
            best_obj = f;
        }
        step = fine;
        evaluations += 1;
        round_objectives.push(best_obj);
    }

    let theta = PhaseVector::new(&best_theta);
    let mut report = SolveReport {
        method: Method::GridOracle,
        q: crate::beamformers::build_q(&theta, p),
        beam: Some(BeamVector::from_phases(&theta, p)),
        residual: sys
            .residual(theta.as_slice())
            .iter()
            .fold(0.0, |m, x| m.max(x.abs())),
        theta: Some(theta),
        objective_w: 0.0,
        iterations: evaluations,
        certified: false,
        certificate: None,
        zero_alpha: false,
        starts: 1,
        wall_time_s: 0.0,
    };
    report.objective_w = crate::linalg::sum_harvested(report.q.as_matrix(), h)?;
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(GridTrace {
        report,
        round_objectives,
        final_step: step,
    })
}

/// Evaluates the tensor grid `axes[0] × … × axes[free−1]` (θ_1 = 0 prepended).
/// Parallel over the first axis; ties go to the lexicographically smallest
/// wrapped θ so the result does not depend on scheduling.
fn search_box(sys: &PhaseSystem, axes: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let free = axes.len();
    let wins = |theta: &[f64], f: f64, best: &(Vec<f64>, f64)| -> bool {
        match f.total_cmp(&best.1) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_smaller(theta, &best.0),
        }
    };
    axes[0]
        .par_iter()
        .map(|&t1| {
            let mut theta = vec![0.0; free + 1];
            theta[1] = t1;
            let mut best: (Vec<f64>, f64) = (theta.clone(), f64::NEG_INFINITY);
            let mut idx = vec![0usize; free];
            loop {
                for d in 1..free {
                    theta[d + 1] = axes[d][idx[d]];
                }
                let f = sys.objective(&theta);
                if wins(&theta, f, &best) {
                    best = (theta.clone(), f);
                }
                // odometer over axes 1..free
                let mut d = 1;
                loop {
                    if d >= free {
                        return best;
                    }
                    idx[d] += 1;
                    if idx[d] < axes[d].len() {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
            }
        })
        .reduce(
            || (vec![0.0; free + 1], f64::NEG_INFINITY),
            |a, b| if wins(&b.0, b.1, &a) { b } else { a },
        )
}

fn lex_smaller(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match wrap_phase(*x).total_cmp(&wrap_phase(*y)) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}

/// True iff the smallest eigenvalue of `q` is at least `−tol · max(1, tr Q)`.
pub fn psd_check(q: &ComplexMatrix, tol: f64) -> Result<bool> {
    let asymmetry = q.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    let e = hermitian_eig(q, EIG_TOL)?;
    Ok(e.min().0 >= -tol * q.trace().re.max(1.0))
}

/// Largest matrix [`principal_minor_check`] enumerates (2^N minors).
pub const MINOR_MAX_N: usize = 8;

/// True iff every principal minor of the Hermitian matrix `q` has a
/// non-negative determinant (to `−1e-9` relative to `‖Q_S‖_F^{|S|}`).
pub fn principal_minor_check(q: &ComplexMatrix) -> Result<bool> {
    let n = q.rows();
    if !q.is_square() {
        return Err(Error::DimensionMismatch(
            "principal minors need a square matrix".into(),
        ));
    }
    if n > MINOR_MAX_N {
        return Err(Error::TooLarge(format!(
            "principal minors limited to N <= {MINOR_MAX_N}, got {n}"
        )));
    }
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = ComplexMatrix::from_fn(idx.len(), idx.len(), |r, c| q[(idx[r], idx[c])]);
        let scale = sub.frobenius_norm().max(1e-300).powi(idx.len() as i32);
        if determinant(&sub).re < -1e-9 * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(m: &ComplexMatrix) -> Complex64 {
    let n = m.rows();
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
            .unwrap();
        if a[pivot * n + col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            for k in col..n {
                let v = a[col * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    det
}

/// The two independent three-antenna stationarity equations written in the
/// off-diagonal covariance phases `φ_j = ∠q_{1,j} = −θ_j`:
///
/// ```text
/// √p₂|α₁₂| sin(φ₂ − ∠α₁₂) − √p₃|α₁₃| sin(∠α₁₃ − φ₃)
/// √p₁|α₁₂| sin(∠α₁₂ − φ₂) − √p₃|α₂₃| sin(∠α₂₃ + φ₂ − φ₃)
/// ```
///
/// Both vanish at every stationary point of the N = 3 problem.
pub fn three_antenna_residuals(
    theta: &PhaseVector,
    a: &GramMatrix,
    p: &PowerBudget,
) -> Result<[f64; 2]> {
    if a.n() != 3 || theta.len() != 3 || p.n() != 3 {
        return Err(Error::WrongDimension {
            expected: "N = 3 antennas",
            got: format!("N = {}", a.n()),
        });
    }
    let pw = p.per_antenna();
    let (phi2, phi3) = (-theta.as_slice()[1], -theta.as_slice()[2]);
    let (a12, a13, a23) = (a.get(0, 1), a.get(0, 2), a.get(1, 2));
    let e1 = pw[1].sqrt() * a12.norm() * (phi2 - a12.arg()).sin()
        - pw[2].sqrt() * a13.norm() * (a13.arg() - phi3).sin();
    let e2 = pw[0].sqrt() * a12.norm() * (a12.arg() - phi2).sin()
        - pw[2].sqrt() * a23.norm() * (a23.arg() + phi2 - phi3).sin();
    Ok([e1, e2])
}

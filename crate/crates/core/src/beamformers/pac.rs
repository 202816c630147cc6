//! The PAC optimum through the phase stationarity system.
//!
//! With `w_i = √p_i e^{jθ_i}` the harvested power is
//!
//! ```text
//! f(θ) = Σ_i p_i α_ii + 2 Σ_{i<j} m_ij cos(θ_j − θ_i + ∠α_ij),   m_ij = √(p_i p_j)|α_ij|
//! ```
//!
//! and its stationary points solve `r_i(θ) = Σ_{j≠i} m_ij sin(θ_j − θ_i + ∠α_ij) = 0`
//! (`r = ½ ∇f`). The residuals sum to zero, so with `θ_1 = 0` the reduced
//! system has N−1 equations in N−1 unknowns. A stationary point is accepted as
//! the global optimum only when the dual certificate validates it.

use std::time::Instant;

use num_complex::Complex64;

use super::{check_dims, heuristic, Method, PhaseVector, PowerBudget, SolveReport};
use crate::linalg::{gram, ChannelMatrix, GramMatrix};
use crate::oracle::certify_with_gram;
use crate::rng::rng_stream;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Residual tolerance relative to `Σ_{i<j} m_ij`.
    pub tol_rel: f64,
    /// Random initial points tried after the two heuristic starts.
    pub restarts: usize,
    /// Iteration cap per start.
    pub max_iterations: usize,
    /// Seed for the random restarts.
    pub seed: u64,
    /// Run the dual certificate on converged points.
    pub certify: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol_rel: 1e-10,
            restarts: 8,
            max_iterations: 500,
            seed: 0x5eed,
            certify: true,
        }
    }
}

/// Precomputed coefficients of the stationarity system for one `(A, p)`.
#[derive(Clone, Debug)]
pub struct PhaseSystem {
    n: usize,
    /// `m_ij = √(p_i p_j)|α_ij|`, row-major, zero diagonal.
    mag: Vec<f64>,
    /// `∠α_ij`, row-major.
    ang: Vec<f64>,
    /// `Σ_i p_i α_ii`.
    diag_energy: f64,
}

impl PhaseSystem {
    pub fn new(a: &GramMatrix, p: &PowerBudget) -> Self {
        let n = a.n();
        assert_eq!(n, p.n(), "Gram and power dimensions differ");
        let pw = p.per_antenna();
        let mut mag = vec![0.0; n * n];
        let mut ang = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let z = a.get(i, j);
                    mag[i * n + j] = (pw[i] * pw[j]).sqrt() * z.norm();
                    ang[i * n + j] = z.arg();
                }
            }
        }
        let diag_energy = (0..n).map(|i| pw[i] * a.get(i, i).re).sum();
        Self {
            n,
            mag,
            ang,
            diag_energy,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Σ_{i<j} m_ij`, floored at `1e-12`.
    pub fn scale(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                s += self.mag[i * self.n + j];
            }
        }
        s.max(1e-12)
    }

    /// Rank-one constant-modulus objective `f(θ)`.
    pub fn objective(&self, theta: &[f64]) -> f64 {
        let n = self.n;
        let mut cross = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let k = i * n + j;
                cross += self.mag[k] * (theta[j] - theta[i] + self.ang[k]).cos();
            }
        }
        self.diag_energy + 2.0 * cross
    }

    pub fn residual(&self, theta: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let k = i * n + j;
                        self.mag[k] * (theta[j] - theta[i] + self.ang[k]).sin()
                    })
                    .sum()
            })
            .collect()
    }

    /// Full N×N Jacobian `∂r_i/∂θ_k` (symmetric; equals half the Hessian of `f`).
    pub fn jacobian(&self, theta: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut jac = vec![0.0; n * n];
        for i in 0..n {
            let mut d = 0.0;
            for k in 0..n {
                if k != i {
                    let idx = i * n + k;
                    let v = self.mag[idx] * (theta[k] - theta[i] + self.ang[idx]).cos();
                    jac[idx] = v;
                    d -= v;
                }
            }
            jac[i * n + i] = d;
        }
        jac
    }

    /// One Gauss–Seidel sweep: each `θ_i` is set to the exact maximizer of
    /// `f` with the others held fixed, i.e. the angle of the aggregated
    /// phasor `Σ_{j≠i} m_ij e^{j(θ_j + ∠α_ij)}`. Never decreases `f`.
    pub fn sweep(&self, theta: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let mut u = Complex64::new(0.0, 0.0);
            for (j, &tj) in theta.iter().enumerate() {
                if j != i {
                    let k = i * n + j;
                    u += Complex64::from_polar(self.mag[k], tj + self.ang[k]);
                }
            }
            if u.norm() > 0.0 {
                theta[i] = u.arg();
            }
        }
        gauge_fix(theta);
    }

    fn has_zero_coupling(&self) -> bool {
        let n = self.n;
        let largest = self.mag.iter().copied().fold(0.0, f64::max);
        (0..n).any(|i| (i + 1..n).any(|j| self.mag[i * n + j] <= 1e-13 * largest))
    }
}

fn gauge_fix(theta: &mut [f64]) {
    let t0 = theta[0];
    for t in theta.iter_mut() {
        *t = super::wrap_phase(*t - t0);
    }
    theta[0] = 0.0;
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Left-hand sides of the N phase stationarity equations,
/// `r_i = Σ_{j≠i} √(p_i p_j)|α_ij| sin(θ_j − θ_i + ∠α_ij)`.
pub fn phase_residual(theta: &PhaseVector, a: &GramMatrix, p: &PowerBudget) -> Vec<f64> {
    PhaseSystem::new(a, p).residual(theta.as_slice())
}

/// Jacobian of [`phase_residual`] with respect to all N phases, row-major.
pub fn phase_jacobian(theta: &PhaseVector, a: &GramMatrix, p: &PowerBudget) -> Vec<f64> {
    PhaseSystem::new(a, p).jacobian(theta.as_slice())
}

/// Cholesky factorization of a symmetric positive definite `n×n` matrix, in
/// place (lower triangle). Fails on a pivot below `floor`.
fn cholesky(m: &mut [f64], n: usize, floor: f64) -> bool {
    for j in 0..n {
        let mut d = m[j * n + j];
        for k in 0..j {
            d -= m[j * n + k] * m[j * n + k];
        }
        if !(d > floor) {
            return false;
        }
        let d = d.sqrt();
        m[j * n + j] = d;
        for i in j + 1..n {
            let mut s = m[i * n + j];
            for k in 0..j {
                s -= m[i * n + k] * m[j * n + k];
            }
            m[i * n + j] = s / d;
        }
    }
    true
}

fn cholesky_solve(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

struct RunOutcome {
    theta: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
}

/// Damped Newton from one start.
///
/// Newton steps are taken on the reduced system (θ_1 pinned) while `−J` is
/// positive definite, i.e. near a local maximum; the step is halved up to 30
/// times until the residual norm drops. Where `−J` is singular or indefinite,
/// or no damped step helps, a coordinate-ascent sweep is taken instead.
fn newton_run(sys: &PhaseSystem, start: &[f64], tol: f64, max_iterations: usize) -> RunOutcome {
    let n = sys.n;
    let mut theta = start.to_vec();
    gauge_fix(&mut theta);
    if n == 1 {
        return RunOutcome {
            theta,
            residual: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let m = n - 1;
    let pivot_floor = 1e-12 * sys.scale();
    let mut r = sys.residual(&theta);
    for it in 0..max_iterations {
        let rmax = max_abs(&r);
        if rmax <= tol {
            return RunOutcome {
                theta,
                residual: rmax,
                iterations: it,
                converged: true,
            };
        }
        let jac = sys.jacobian(&theta);
        let mut neg = vec![0.0; m * m];
        for i in 0..m {
            for k in 0..m {
                neg[i * m + k] = -jac[(i + 1) * n + (k + 1)];
            }
        }
        let mut stepped = false;
        if cholesky(&mut neg, m, pivot_floor) {
            // (−J) δ = r  ⇔  J δ = −r
            let mut delta = r[1..].to_vec();
            cholesky_solve(&neg, m, &mut delta);
            let base = norm2(&r);
            let mut lambda = 1.0;
            for _ in 0..=30 {
                let mut trial = theta.clone();
                for i in 0..m {
                    trial[i + 1] += lambda * delta[i];
                }
                gauge_fix(&mut trial);
                let rt = sys.residual(&trial);
                if norm2(&rt) < base {
                    theta = trial;
                    r = rt;
                    stepped = true;
                    break;
                }
                lambda *= 0.5;
            }
        }
        if !stepped {
            sys.sweep(&mut theta);
            r = sys.residual(&theta);
        }
    }
    let rmax = max_abs(&r);
    RunOutcome {
        theta,
        residual: rmax,
        iterations: max_iterations,
        converged: rmax <= tol,
    }
}

/// Maximizes `tr(H Q Hᴴ)` subject to `q_ii ≤ p_i`, `Q ⪰ 0`.
///
/// Starts from the [`suboptimal_2`](super::suboptimal_2) phases, then the
/// [`suboptimal_1`](super::suboptimal_1) phases, then `opts.restarts` random
/// phase vectors. Returns as soon as a converged point carries a valid dual
/// certificate; otherwise the best converged stationary point, with
/// `certified = false`. Fails with [`Error::NoConvergence`] (best attempt
/// attached) if no start reaches the residual tolerance.
pub fn solve_pac(h: &ChannelMatrix, p: &PowerBudget, opts: &SolverOptions) -> Result<SolveReport> {
    check_dims(h, p)?;
    let start = Instant::now();
    let a = gram(h);
    solve_pac_with_gram(h, &a, p, opts, start)
}

/// [`solve_pac`] with a precomputed Gram matrix; `start` is the timer origin
/// reported in `wall_time_s`.
pub fn solve_pac_with_gram(
    h: &ChannelMatrix,
    a: &GramMatrix,
    p: &PowerBudget,
    opts: &SolverOptions,
    start: Instant,
) -> Result<SolveReport> {
    check_dims(h, p)?;
    let sys = PhaseSystem::new(a, p);
    let n = sys.n;
    let tol = opts.tol_rel * sys.scale();
    let zero_alpha = sys.has_zero_coupling();

    let mut iterations = 0;
    let mut best: Option<(f64, RunOutcome)> = None;
    let mut best_failed: Option<RunOutcome> = None;
    let total_starts = 2 + opts.restarts;

    for s in 0..total_starts {
        let init = match s {
            0 => heuristic::sub2_phases(a)?,
            1 => heuristic::sub1_phases(a, p)?,
            _ => {
                let mut rng = rng_stream(opts.seed, s as u64);
                let mut t: Vec<f64> = (0..n).map(|_| rng.phase()).collect();
                t[0] = 0.0;
                PhaseVector::new(&t)
            }
        };
        let run = newton_run(&sys, init.as_slice(), tol, opts.max_iterations);
        iterations += run.iterations;
        if !run.converged {
            if best_failed
                .as_ref()
                .is_none_or(|b| run.residual < b.residual)
            {
                best_failed = Some(run);
            }
            continue;
        }
        let theta = PhaseVector::new(&run.theta);
        if opts.certify {
            let cert = certify_with_gram(&theta, a, p);
            if cert.valid {
                let mut rep = SolveReport::from_phases(Method::PacNewton, theta, p, h)?;
                rep.iterations = iterations;
                rep.residual = run.residual;
                rep.certified = true;
                rep.certificate = Some(cert);
                rep.zero_alpha = zero_alpha;
                rep.starts = s + 1;
                return Ok(rep.timed(start));
            }
        }
        let obj = sys.objective(&run.theta);
        if best.as_ref().is_none_or(|(b, _)| obj > *b) {
            best = Some((obj, run));
        }
    }

    match best {
        Some((_, run)) => {
            let theta = PhaseVector::new(&run.theta);
            let cert = opts.certify.then(|| certify_with_gram(&theta, a, p));
            let mut rep = SolveReport::from_phases(Method::PacNewton, theta, p, h)?;
            rep.iterations = iterations;
            rep.residual = run.residual;
            rep.certified = cert.as_ref().is_some_and(|c| c.valid);
            rep.certificate = cert;
            rep.zero_alpha = zero_alpha;
            rep.starts = total_starts;
            Ok(rep.timed(start))
        }
        None => {
            let run = best_failed.expect("at least one start was tried");
            let mut rep =
                SolveReport::from_phases(Method::PacNewton, PhaseVector::new(&run.theta), p, h)?;
            rep.iterations = iterations;
            rep.residual = run.residual;
            rep.zero_alpha = zero_alpha;
            rep.starts = total_starts;
            Err(Error::NoConvergence {
                best: Box::new(rep.timed(start)),
            })
        }
    }
}

//! Monte Carlo sweeps and solve-time benchmarks.
//!
//! Every trial draws one scenario that all requested methods share, so
//! methods are compared on identical channels. Trials run on the rayon pool
//! and are reduced in trial order, which keeps the statistics bit-identical
//! between serial and parallel runs.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::ExperimentConfig;
use crate::beamformers::{
    independent_baseline, random_phase_baseline, solve_closed_k1, solve_closed_n2, solve_pac,
    solve_spc, suboptimal_1, suboptimal_2, Method, PowerBudget, SolveReport, SolverOptions,
};
use crate::channel::sample_scenario_stream;
use crate::linalg::ChannelMatrix;
use crate::oracle::{grid_search, GRID_COARSE_STEP, GRID_REFINE_ROUNDS};
use crate::rng::{rng_stream, RngStream};
use crate::{Error, Result};

/// Relative slack for the per-trial feasible-set ordering.
pub const ORDERING_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub method: Method,
    pub n: usize,
    pub mean_mw: f64,
    pub stderr_mw: f64,
    /// Mean solve time for sweeps, median for benchmarks; `None` when timing
    /// is disabled.
    pub mean_solve_time_ms: Option<f64>,
    /// Fraction of certified optima for `pac_newton`, 1 for other methods.
    pub certified_fraction: f64,
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub objective_mw: BTreeMap<Method, f64>,
    pub solve_time_ms: BTreeMap<Method, f64>,
    /// Certificate outcome of `pac_newton`, if it ran.
    pub certified: Option<bool>,
    /// `pac_newton` reached the residual tolerance.
    pub converged: bool,
    pub zero_alpha: bool,
}

impl TrialRecord {
    /// Methods whose objective breaks `{heuristics} ≤ pac ≤ spc` in this trial.
    pub fn ordering_violations(&self) -> Vec<Method> {
        let mut bad = Vec::new();
        let get = |m: Method| self.objective_mw.get(&m).copied();
        let le = |a: f64, b: f64| a <= b + ORDERING_SLACK * b.abs().max(a.abs());
        if let Some(pac) = get(Method::PacNewton) {
            for (&m, &v) in &self.objective_mw {
                if !matches!(m, Method::PacNewton | Method::Spc) && !le(v, pac) {
                    bad.push(m);
                }
            }
            if let Some(spc) = get(Method::Spc) {
                if !le(pac, spc) {
                    bad.push(Method::PacNewton);
                }
            }
        } else if let Some(spc) = get(Method::Spc) {
            for (&m, &v) in &self.objective_mw {
                if m != Method::Spc && !le(v, spc) {
                    bad.push(m);
                }
            }
        }
        bad
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentRun {
    pub rows: Vec<ResultRow>,
    pub trials: Vec<TrialRecord>,
    pub ordering_violations: usize,
}

impl ExperimentRun {
    pub fn row(&self, method: Method, n: usize) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.method == method && r.n == n)
    }
}

fn scenario_stream(n: usize, trial: usize) -> u64 {
    ((n as u64) << 32) | trial as u64
}

fn phase_stream(n: usize, trial: usize) -> u64 {
    (1 << 63) | scenario_stream(n, trial)
}

/// Runs one method; the flag is false when the phase solver missed its
/// residual tolerance (its best attempt is returned rather than an error).
pub(crate) fn run_method(
    method: Method,
    h: &ChannelMatrix,
    p: &PowerBudget,
    rng: &mut RngStream,
    opts: &SolverOptions,
) -> Result<(SolveReport, bool)> {
    let rep = match method {
        Method::Spc => solve_spc(h, p.total()),
        Method::PacNewton => match solve_pac(h, p, opts) {
            Err(Error::NoConvergence { best }) => return Ok((*best, false)),
            other => other,
        },
        Method::PacClosedN2 => solve_closed_n2(h, p),
        Method::PacClosedK1 => solve_closed_k1(h, p),
        Method::Sub1 => suboptimal_1(h, p),
        Method::Sub2 => suboptimal_2(h, p),
        Method::Independent => independent_baseline(h, p),
        Method::RandomPhase => random_phase_baseline(h, p, rng),
        Method::GridOracle => grid_search(h, p, GRID_COARSE_STEP, GRID_REFINE_ROUNDS),
    }?;
    Ok((rep, true))
}

fn run_trial(cfg: &ExperimentConfig, n: usize, trial: usize) -> Result<TrialRecord> {
    let scenario = sample_scenario_stream(&cfg.cell_for(n), scenario_stream(n, trial));
    let p = cfg.budget(n)?;
    let mut rng = rng_stream(cfg.seed, phase_stream(n, trial));
    let opts = SolverOptions::default();
    let mut rec = TrialRecord {
        n,
        trial,
        objective_mw: BTreeMap::new(),
        solve_time_ms: BTreeMap::new(),
        certified: None,
        converged: true,
        zero_alpha: false,
    };
    for &m in &cfg.methods {
        let t0 = Instant::now();
        let (rep, converged) = run_method(m, &scenario.h, &p, &mut rng, &opts)?;
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        if m == Method::PacNewton {
            rec.certified = Some(rep.certified);
            rec.converged = converged;
            rec.zero_alpha = rep.zero_alpha;
        }
        rec.objective_mw.insert(m, rep.objective_mw());
        rec.solve_time_ms.insert(m, ms);
    }
    Ok(rec)
}

fn mean_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let count = values.clone().count();
    let mean = values.clone().sum::<f64>() / count as f64;
    if count < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
    (mean, (var / count as f64).sqrt())
}

/// Runs the sweep and keeps the per-trial records.
pub fn run_experiment_detailed(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    cfg.validate()?;
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for &n in &cfg.antenna_counts {
        let trials: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, n, t))
            .collect::<Result<_>>()?;
        for &m in &cfg.methods {
            let (mean_mw, stderr_mw) = mean_stderr(trials.iter().map(|r| r.objective_mw[&m]));
            let mean_time =
                trials.iter().map(|r| r.solve_time_ms[&m]).sum::<f64>() / trials.len() as f64;
            let certified_fraction = if m == Method::PacNewton {
                trials.iter().filter(|r| r.certified == Some(true)).count() as f64
                    / trials.len() as f64
            } else {
                1.0
            };
            rows.push(ResultRow {
                method: m,
                n,
                mean_mw,
                stderr_mw,
                mean_solve_time_ms: cfg.timing.then_some(mean_time),
                certified_fraction,
            });
        }
        all.extend(trials);
    }
    let ordering_violations = all.iter().map(|t| t.ordering_violations().len()).sum();
    Ok(ExperimentRun {
        rows,
        trials: all,
        ordering_violations,
    })
}

/// Mean harvested power (mW) with standard errors for every method and N.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    run_experiment_detailed(cfg).map(|r| r.rows)
}

/// Median wall-clock solve time per method and N, measured serially. The
/// first few trials of each N are warm-up solves and are not timed.
pub fn run_timing(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    if let Some(m) = cfg
        .methods
        .iter()
        .find(|m| !matches!(m, Method::PacNewton | Method::Sub1 | Method::Sub2))
    {
        return Err(Error::InvalidInput(format!(
            "benchmark supports pac_newton, sub1 and sub2, not {m}"
        )));
    }
    let warmup = cfg.trials.min(10);
    let opts = SolverOptions::default();
    let mut rows = Vec::new();
    for &n in &cfg.antenna_counts {
        let p = cfg.budget(n)?;
        let mut times: BTreeMap<Method, Vec<f64>> = BTreeMap::new();
        let mut objectives: BTreeMap<Method, Vec<f64>> = BTreeMap::new();
        for t in 0..warmup + cfg.trials {
            let scenario = sample_scenario_stream(&cfg.cell_for(n), scenario_stream(n, t));
            let mut rng = rng_stream(cfg.seed, phase_stream(n, t));
            for &m in &cfg.methods {
                let t0 = Instant::now();
                let (rep, _) = run_method(m, &scenario.h, &p, &mut rng, &opts)?;
                let ms = t0.elapsed().as_secs_f64() * 1e3;
                if t >= warmup {
                    times.entry(m).or_default().push(ms);
                    objectives.entry(m).or_default().push(rep.objective_mw());
                }
            }
        }
        for &m in &cfg.methods {
            let mut ts = times.remove(&m).unwrap_or_default();
            ts.sort_by(f64::total_cmp);
            let median = if ts.len() % 2 == 1 {
                ts[ts.len() / 2]
            } else {
                0.5 * (ts[ts.len() / 2 - 1] + ts[ts.len() / 2])
            };
            let (mean_mw, stderr_mw) = mean_stderr(objectives[&m].iter().copied());
            rows.push(ResultRow {
                method: m,
                n,
                mean_mw,
                stderr_mw,
                mean_solve_time_ms: Some(median),
                certified_fraction: 1.0,
            });
        }
    }
    Ok(rows)
}

// How close the two eigenvector heuristics get to the PAC optimum, per trial.

use pabeam::beamformers::Method;
use pabeam::sim::{run_experiment_detailed, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        antenna_counts: vec![5],
        methods: vec![
            Method::RandomPhase,
            Method::Sub1,
            Method::Sub2,
            Method::PacNewton,
        ],
        trials: 300,
        timing: false,
        ..ExperimentConfig::default()
    };
    let run = run_experiment_detailed(&cfg)?;
    for m in [Method::RandomPhase, Method::Sub1, Method::Sub2] {
        let gaps: Vec<f64> = run
            .trials
            .iter()
            .map(|t| 1.0 - t.objective_mw[&m] / t.objective_mw[&Method::PacNewton])
            .collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        let worst = gaps.iter().copied().fold(0.0, f64::max);
        println!(
            "{m:<13} mean {:.4} mW, gap to optimum: mean {:.3}%, worst {:.2}%",
            run.row(m, 5).unwrap().mean_mw,
            100.0 * mean,
            100.0 * worst
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

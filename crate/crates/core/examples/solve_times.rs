// Median solve time of the Newton solver and the two heuristics. `pabeam
// bench` runs the same measurement at N = 5..25 with more trials.

use pabeam::sim::{run_timing, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        antenna_counts: vec![5, 15],
        trials: 30,
        ..ExperimentConfig::bench_default()
    };
    for row in run_timing(&cfg)? {
        println!(
            "{:<11} N={:<3} median {:.4} ms",
            row.method.name(),
            row.n,
            row.mean_solve_time_ms.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

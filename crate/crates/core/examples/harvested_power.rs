// Mean harvested power against the number of transmit antennas for the
// independent, PAC-optimal and sum-power designs.
//
// The full sweep is `pabeam run`; this runs a short version and writes the
// same CSV.

use pabeam::beamformers::Method;
use pabeam::sim::{run_experiment_detailed, write_csv, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        antenna_counts: vec![1, 3, 5, 8],
        methods: vec![Method::Independent, Method::PacNewton, Method::Spc],
        trials: 200,
        timing: false,
        ..ExperimentConfig::default()
    };
    let run = run_experiment_detailed(&cfg)?;
    println!(
        "{:>3} {:>12} {:>12} {:>12}",
        "N", "independent", "pac", "spc"
    );
    for &n in &cfg.antenna_counts {
        let m = |method| run.row(method, n).unwrap().mean_mw;
        println!(
            "{n:>3} {:>12.4} {:>12.4} {:>12.4}",
            m(Method::Independent),
            m(Method::PacNewton),
            m(Method::Spc)
        );
    }
    println!("ordering violations: {}", run.ordering_violations);

    let dir = tempfile::tempdir()?;
    write_csv(&run.rows, dir.path().join("results.csv"))?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

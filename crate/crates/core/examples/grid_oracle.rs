// Brute-force phase search for three antennas, refined round by round, next
// to the Newton solution.

use pabeam::beamformers::{solve_pac, PowerBudget, SolverOptions};
use pabeam::linalg::{gram, ComplexMatrix};
use pabeam::oracle::{grid_search_trace, three_antenna_residuals, GRID_COARSE_STEP};
use pabeam::rng::rng_stream;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rng_stream(3, 0);
    let h = ComplexMatrix::from_fn(4, 3, |_, _| rng.complex_normal());
    let p = PowerBudget::new(vec![0.5, 0.3, 0.2])?;

    let trace = grid_search_trace(&h, &p, GRID_COARSE_STEP, 4)?;
    for (round, f) in trace.round_objectives.iter().enumerate() {
        println!("round {round}: {f:.12} W");
    }
    let newton = solve_pac(&h, &p, &SolverOptions::default())?;
    let theta = newton.theta.as_ref().unwrap();
    let r = three_antenna_residuals(theta, &gram(&h), &p)?;
    println!(
        "grid {:.12} W at step {:.0e}, newton {:.12} W, residuals {:.1e} {:.1e}",
        trace.report.objective_w, trace.final_step, newton.objective_w, r[0], r[1]
    );
    assert!(trace.report.objective_w <= newton.objective_w * (1.0 + 1e-9));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

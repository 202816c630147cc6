// Closed-form optima for two antennas and for a single receiver, checked
// against the general phase solver.

use num_complex::Complex64;
use pabeam::beamformers::{
    solve_closed_k1, solve_closed_n2, solve_pac, PowerBudget, SolverOptions,
};
use pabeam::linalg::ComplexMatrix;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Complex64::new;

    // Two antennas, three receivers.
    let h = ComplexMatrix::from_rows(&[
        vec![c(0.8, -0.2), c(0.1, 0.9)],
        vec![c(-0.4, 0.3), c(0.6, 0.6)],
        vec![c(0.2, 0.5), c(-0.7, 0.1)],
    ]);
    let p = PowerBudget::new(vec![0.3, 0.7])?;
    let closed = solve_closed_n2(&h, &p)?;
    let newton = solve_pac(&h, &p, &SolverOptions::default())?;
    println!(
        "N=2: closed {:.12} W, newton {:.12} W, theta_2 = {:.9} rad, certified {}",
        closed.objective_w,
        newton.objective_w,
        closed.theta.as_ref().unwrap().as_slice()[1],
        closed.certified
    );
    assert!((closed.objective_w - newton.objective_w).abs() <= 1e-10 * closed.objective_w);

    // One receiver: co-phase every antenna with its channel, (Σ √p_i |h_i|)².
    let h = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, -2.0), c(-0.5, 0.0), c(0.3, 0.4)]]);
    let p = PowerBudget::equal(1.0, 4)?;
    let closed = solve_closed_k1(&h, &p)?;
    let want: f64 = h.row(0).iter().map(|z| 0.5 * z.norm()).sum::<f64>().powi(2);
    println!(
        "K=1: closed {:.12} W, formula {want:.12} W",
        closed.objective_w
    );
    assert!((closed.objective_w - want).abs() <= 1e-12 * want);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

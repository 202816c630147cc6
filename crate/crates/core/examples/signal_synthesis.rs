// Turn an optimal beam into a transmit block `x_t = w s_t` and recover the
// covariance from samples.

use pabeam::beamformers::{
    empirical_covariance, solve_pac, synthesize_signal, PowerBudget, SolverOptions,
};
use pabeam::linalg::ComplexMatrix;
use pabeam::rng::rng_stream;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rng_stream(11, 0);
    let h = ComplexMatrix::from_fn(3, 4, |_, _| rng.complex_normal());
    let p = PowerBudget::new(vec![0.4, 0.1, 0.3, 0.2])?;
    let rep = solve_pac(&h, &p, &SolverOptions::default())?;

    let x = synthesize_signal(rep.beam.as_ref().unwrap(), 4096, &mut rng)?;
    let q = empirical_covariance(&x);
    let err = q.sub(rep.q.as_matrix()).frobenius_norm();
    for i in 0..p.n() {
        println!(
            "antenna {i}: radiated {:.6} W, budget {:.6} W",
            q[(i, i)].re,
            p.per_antenna()[i]
        );
    }
    println!("|Q_sample - Q| = {err:.2e}");
    // Unit-modulus symbols make the sample covariance exact.
    assert!(err < 1e-12);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

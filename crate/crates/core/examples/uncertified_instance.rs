// For four or more antennas the best constant-modulus beam is not always
// optimal over all covariances. Scan random instances until the certificate
// refuses one and show why: `B` has a negative eigenvalue, so some
// higher-rank covariance harvests more.

use pabeam::beamformers::{solve_pac, PowerBudget, SolverOptions};
use pabeam::linalg::ComplexMatrix;
use pabeam::rng::rng_stream;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rng_stream(99, 0);
    for trial in 0..500 {
        let h = ComplexMatrix::from_fn(6, 6, |_, _| rng.complex_normal());
        let p = PowerBudget::equal(1.0, 6)?;
        let rep = solve_pac(&h, &p, &SolverOptions::default())?;
        if rep.certified {
            continue;
        }
        let cert = rep.certificate.as_ref().unwrap();
        println!(
            "trial {trial}: stationary (residual {:.1e}) but min eig(B) = {:.4} < 0, zero-alpha {}",
            rep.residual, cert.min_eig_b, rep.zero_alpha
        );
        return Ok(());
    }
    println!("every instance certified");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

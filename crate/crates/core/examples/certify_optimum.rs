// Solve one random instance and inspect the dual certificate that proves
// (or refuses to prove) global optimality of the rank-one beam.
//
// The certificate builds `B = diag(b) − offdiag(A)` from the returned phases.
// `B ⪰ 0` together with `B w = 0` is the KKT condition of the convex
// covariance problem, and then `Σ c_i p_i` equals the harvested power.

use pabeam::beamformers::{solve_pac, PowerBudget, SolverOptions};
use pabeam::linalg::ComplexMatrix;
use pabeam::rng::rng_stream;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rng_stream(7, 0);
    let (k, n) = (6, 5);
    let h = ComplexMatrix::from_fn(k, n, |_, _| rng.complex_normal());
    let p = PowerBudget::new(vec![0.1, 0.3, 0.2, 0.25, 0.15])?;

    let rep = solve_pac(&h, &p, &SolverOptions::default())?;
    let theta: Vec<String> = rep
        .theta
        .as_ref()
        .unwrap()
        .as_slice()
        .iter()
        .map(|t| format!("{t:+.6}"))
        .collect();
    println!("theta = [{}]", theta.join(", "));
    println!(
        "objective {:.9} W after {} iterations from {} starts, residual {:.1e}",
        rep.objective_w, rep.iterations, rep.starts, rep.residual
    );

    let cert = rep.certificate.as_ref().unwrap();
    println!(
        "min eig(B) {:.3e}, |BQ| {:.3e}, dual value {:.9} W, valid {}",
        cert.min_eig_b,
        cert.complementarity_norm,
        cert.dual_objective(&p),
        cert.valid
    );
    if cert.valid {
        assert!((cert.dual_objective(&p) - rep.objective_w).abs() <= 1e-7 * rep.objective_w);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

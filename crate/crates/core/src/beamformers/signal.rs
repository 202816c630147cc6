//! Transmit block synthesis for a rank-one beam: `x_t = w s_t`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::BeamVector;
use crate::linalg::ComplexMatrix;
use crate::rng::RngStream;
use crate::{Error, Result};

/// N × `num_symbols` block `x_t = w s_t` with i.i.d. unit-modulus QPSK
/// symbols, so each antenna radiates exactly `|w_i|²`.
pub fn synthesize_signal(
    beam: &BeamVector,
    num_symbols: usize,
    rng: &mut RngStream,
) -> Result<ComplexMatrix> {
    if num_symbols == 0 {
        return Err(Error::InvalidInput("num_symbols must be >= 1".into()));
    }
    let w = beam.as_slice();
    let mut x = ComplexMatrix::zeros(w.len(), num_symbols);
    for t in 0..num_symbols {
        let quadrant = (rng.next_u64() >> 62) as f64;
        let s = Complex64::from_polar(1.0, FRAC_PI_4 + quadrant * 2.0 * FRAC_PI_4);
        for (i, wi) in w.iter().enumerate() {
            x[(i, t)] = wi * s;
        }
    }
    Ok(x)
}

/// `(1/T) Σ_t x_t x_tᴴ`.
pub fn empirical_covariance(x: &ComplexMatrix) -> ComplexMatrix {
    let (n, t) = (x.rows(), x.cols());
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..t)
            .map(|k| x[(i, k)] * x[(j, k)].conj())
            .sum::<Complex64>()
            / t as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamformers::{build_q, PhaseVector, PowerBudget};
    use crate::rng::rng_stream;

    #[test]
    fn single_symbol() {
        let p = PowerBudget::new(vec![0.2, 0.8]).unwrap();
        let beam = BeamVector::from_phases(&PhaseVector::new(&[0.0, 1.0]), &p);
        let x = synthesize_signal(&beam, 1, &mut rng_stream(1, 0)).unwrap();
        assert_eq!(x.cols(), 1);
        assert!((x[(0, 0)].norm() - 0.2f64.sqrt()).abs() < 1e-15);
        assert!((x[(1, 0)].norm() - 0.8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_symbols_rejected() {
        let beam = BeamVector(vec![Complex64::new(1.0, 0.0)]);
        assert!(synthesize_signal(&beam, 0, &mut rng_stream(1, 0)).is_err());
    }

    #[test]
    fn covariance_converges() {
        let p = PowerBudget::new(vec![0.1, 0.4, 0.5]).unwrap();
        let theta = PhaseVector::new(&[0.0, 2.0, -0.7]);
        let beam = BeamVector::from_phases(&theta, &p);
        let t = 100_000;
        let x = synthesize_signal(&beam, t, &mut rng_stream(3, 0)).unwrap();
        let emp = empirical_covariance(&x);
        let q = build_q(&theta, &p);
        let err = emp.sub(q.as_matrix()).frobenius_norm();
        assert!(err <= 5.0 / (t as f64).sqrt() * q.as_matrix().frobenius_norm());
        for i in 0..3 {
            assert!((emp[(i, i)].re - p.per_antenna()[i]).abs() < 1e-12);
        }
    }
}

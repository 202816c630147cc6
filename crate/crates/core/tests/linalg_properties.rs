mod common;

use common::random_channel;
use num_complex::Complex64;
use pabeam::linalg::{
    dominant_eigenpair, gram, hermitian_eig, quadratic_form, sum_harvested, ComplexMatrix, EIG_TOL,
};
use pabeam::oracle::{principal_minor_check, psd_check};
use pabeam::rng::{rng_stream, RngStream};
use proptest::prelude::*;

fn random_hermitian(rng: &mut RngStream, n: usize) -> ComplexMatrix {
    let g = random_channel(rng, n, n);
    let gh = g.conj_transpose();
    ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (g[(i, j)] + gh[(i, j)]))
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs_and_is_orthonormal(seed in any::<u64>(), n in 1usize..12) {
        let a = random_hermitian(&mut rng_stream(seed, 0), n);
        let e = hermitian_eig(&a, EIG_TOL).unwrap();
        prop_assert!(e.reconstruct().sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm().max(1.0));
        prop_assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        for i in 0..n {
            for j in 0..n {
                let d = inner(&e.vector(i), &e.vector(j));
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalues_are_rayleigh_quotients(seed in any::<u64>(), n in 1usize..10) {
        let a = random_hermitian(&mut rng_stream(seed, 0), n);
        let e = hermitian_eig(&a, EIG_TOL).unwrap();
        for i in 0..n {
            let v = e.vector(i);
            prop_assert!((quadratic_form(&a, &v) - e.values[i]).abs() < 1e-12 * a.frobenius_norm().max(1.0));
        }
        let trace: f64 = e.values.iter().sum();
        prop_assert!((trace - a.trace().re).abs() < 1e-12 * a.frobenius_norm().max(1.0) * n as f64);
    }

    #[test]
    fn gram_is_inner_products(seed in any::<u64>(), k in 1usize..8, n in 1usize..8) {
        let h = random_channel(&mut rng_stream(seed, 0), k, n);
        let a = gram(&h);
        for i in 0..n {
            for j in 0..n {
                let want = inner(&h.column(i), &h.column(j));
                prop_assert!((a.get(i, j) - want).norm() < 1e-12 * (1.0 + want.norm()));
            }
            prop_assert_eq!(a.get(i, i).im, 0.0);
        }
    }

    #[test]
    fn power_iteration_agrees_with_jacobi(seed in any::<u64>(), k in 1usize..10, n in 2usize..12) {
        let a = gram(&random_channel(&mut rng_stream(seed, 0), k, n)).into_matrix();
        let (rho, v) = dominant_eigenpair(&a, 1e-13).unwrap();
        let e = hermitian_eig(&a, EIG_TOL).unwrap();
        prop_assert!((rho - e.values[0]).abs() <= 1e-10 * e.values[0]);
        let av = a.mul_vec(&v);
        let resid: f64 = av.iter().zip(&v).map(|(y, x)| (y - x * rho).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(resid <= 1e-12 * a.frobenius_norm());
    }
}

#[test]
fn harvested_power_of_psd_covariance_is_non_negative() {
    let mut rng = rng_stream(31, 0);
    for t in 0..1000 {
        let n = 1 + t % 6;
        let g = random_channel(&mut rng, n, n);
        // G Gᴴ is PSD; rank deficiency comes from zeroing a column.
        let mut gz = g.clone();
        if t % 3 == 0 {
            for r in 0..n {
                gz[(r, 0)] = Complex64::new(0.0, 0.0);
            }
        }
        let q = gz.matmul(&gz.conj_transpose()).unwrap();
        let h = random_channel(&mut rng, 1 + t % 4, n);
        let s = sum_harvested(&q, &h).unwrap();
        assert!(
            s >= -1e-12 * q.frobenius_norm() * h.frobenius_norm().powi(2),
            "trial {t}: {s}"
        );
    }
}

#[test]
fn minors_and_eigenvalues_agree_on_psd() {
    let mut rng = rng_stream(41, 0);
    let (mut psd, mut indefinite) = (0, 0);
    for t in 0..1000 {
        let a = random_hermitian(&mut rng, 4);
        // Shift to straddle the PSD boundary without landing on it.
        let e = hermitian_eig(&a, EIG_TOL).unwrap();
        let shift = -e.min().0 + if t % 2 == 0 { 0.05 } else { -0.05 };
        let q = ComplexMatrix::from_fn(4, 4, |i, j| {
            a[(i, j)]
                + if i == j {
                    Complex64::new(shift, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
        });
        let by_eig = psd_check(&q, 1e-9).unwrap();
        let by_minor = principal_minor_check(&q).unwrap();
        assert_eq!(by_eig, by_minor, "trial {t}");
        if by_eig {
            psd += 1;
        } else {
            indefinite += 1;
        }
    }
    assert_eq!((psd, indefinite), (500, 500));
}

#[test]
fn dimension_errors() {
    let a = ComplexMatrix::zeros(2, 3);
    assert!(hermitian_eig(&a, EIG_TOL).is_err());
    assert!(a.matmul(&ComplexMatrix::zeros(2, 2)).is_err());
    assert!(sum_harvested(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(1, 3)).is_err());
}

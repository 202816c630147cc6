//! Sampled channels against closed-form moments.
//!
//! With area-uniform placement on the disk of radius `R`, distances below
//! `r0` clamped up, and exponent 3:
//! `E[d⁻³] = (r0/R)² r0⁻³ + 2 (r0⁻¹ − R⁻¹) / R²`.
//! On the annulus instead: `E[d⁻³] = 2 (r0⁻¹ − R⁻¹) / (R² − r0²)`.
//! The independent baseline with equal split harvests `p_t K g₀ E[d⁻³]`.

use pabeam::beamformers::{independent_baseline, PowerBudget};
use pabeam::channel::{sample_scenario_stream, CellConfig, Placement};

fn moments(xs: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n;
    let var = m(2);
    (mean, var, m(3) / var.powf(1.5), m(4) / (var * var))
}

#[test]
fn fading_is_unit_variance_circular_gaussian() {
    let cfg = CellConfig::default();
    let (mut re, mut im, mut power) = (Vec::new(), Vec::new(), Vec::new());
    for s in 0..4000 {
        let sc = sample_scenario_stream(&cfg, s);
        for (k, d) in sc.distances_m.iter().enumerate() {
            let amp = cfg.pathloss_gain(*d).sqrt();
            for z in sc.h.row(k) {
                let z = z / amp;
                re.push(z.re);
                im.push(z.im);
                power.push(z.norm_sqr());
            }
        }
    }
    // 200 000 draws: standard errors near 0.002 (mean), 0.005 (skew), 0.011 (kurtosis).
    for part in [&re, &im] {
        let (mean, var, skew, kurt) = moments(part);
        assert!(mean.abs() < 0.01, "{mean}");
        assert!((var - 0.5).abs() < 0.01, "{var}");
        assert!(skew.abs() < 0.03, "{skew}");
        assert!((kurt - 3.0).abs() < 0.06, "{kurt}");
    }
    let (mean_power, ..) = moments(&power);
    assert!((mean_power - 1.0).abs() < 0.01, "{mean_power}");
}

#[test]
fn row_power_follows_pathloss() {
    let cfg = CellConfig::default();
    let mut ratios = Vec::new();
    for s in 0..4000 {
        let sc = sample_scenario_stream(&cfg, s);
        for (k, d) in sc.distances_m.iter().enumerate() {
            let row: f64 = sc.h.row(k).iter().map(|z| z.norm_sqr()).sum();
            ratios.push(row / (cfg.num_antennas as f64 * cfg.pathloss_gain(*d)));
        }
    }
    let (mean, var, ..) = moments(&ratios);
    // ‖h̃_k‖² / N is Gamma(N, 1/N): mean 1, variance 1/N.
    assert!((mean - 1.0).abs() < 0.01, "{mean}");
    assert!((var - 0.2).abs() < 0.01, "{var}");
}

fn independent_mean(placement: Placement, trials: u64) -> (f64, f64) {
    let cfg = CellConfig {
        placement,
        ..CellConfig::default()
    };
    let p = PowerBudget::equal(1.0, cfg.num_antennas).unwrap();
    let xs: Vec<f64> = (0..trials)
        .map(|s| {
            independent_baseline(&sample_scenario_stream(&cfg, s).h, &p)
                .unwrap()
                .objective_mw()
        })
        .collect();
    let (mean, var, ..) = moments(&xs);
    (mean, (var / trials as f64).sqrt())
}

#[test]
fn independent_baseline_matches_placement_integrals() {
    let (r, r0, g0, k) = (15.0f64, 1.0f64, 0.01, 10.0);
    let disk = (r0 / r).powi(2) * r0.powi(-3) + 2.0 * (1.0 / r0 - 1.0 / r) / (r * r);
    let annulus = 2.0 * (1.0 / r0 - 1.0 / r) / (r * r - r0 * r0);
    for (placement, e) in [
        (Placement::DiskClamped, disk),
        (Placement::Annulus, annulus),
    ] {
        let want = 1e3 * k * g0 * e;
        let (mean, se) = independent_mean(placement, 40_000);
        assert!(
            (mean - want).abs() < 4.0 * se,
            "{placement:?}: {mean} +- {se} vs {want}"
        );
    }
    assert!((1e3 * k * g0 * disk - 1.2741).abs() < 1e-4);
    assert!((1e3 * k * g0 * annulus - 0.8333).abs() < 1e-4);
}

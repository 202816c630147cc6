//! Random wireless power transfer scenarios and the matrix text format.
//!
//! Receivers are dropped in a circular cell around the transmitter. Row k of
//! the channel is `h_k = √(g₀ d_k^{−v}) · h̃_k` with `h̃_k` i.i.d. unit-variance
//! circularly-symmetric complex Gaussian (Rayleigh) fading.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::linalg::{ChannelMatrix, ComplexMatrix};
use crate::rng::{rng_stream, RngStream};
use crate::{Error, Result};

/// How receiver distances are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Placement {
    /// Uniform by area over the whole disk of radius `R`; distances below the
    /// minimum are clamped up to it.
    #[default]
    DiskClamped,
    /// Uniform by area over the annulus `min ≤ d ≤ R` (no mass below the
    /// minimum distance).
    Annulus,
    /// Distance itself uniform on `[min, R]`.
    DistanceUniform,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::DiskClamped => "disk_clamped",
            Placement::Annulus => "annulus",
            Placement::DistanceUniform => "distance_uniform",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "disk_clamped" => Some(Placement::DiskClamped),
            "annulus" => Some(Placement::Annulus),
            "distance_uniform" => Some(Placement::DistanceUniform),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellConfig {
    pub radius_m: f64,
    pub min_distance_m: f64,
    pub pathloss_exponent: f64,
    pub pathloss_ref_gain: f64,
    pub num_ers: usize,
    pub num_antennas: usize,
    pub placement: Placement,
    pub seed: u64,
}

impl Default for CellConfig {
    fn default() -> Self {
        Self {
            radius_m: 15.0,
            min_distance_m: 1.0,
            pathloss_exponent: 3.0,
            pathloss_ref_gain: 0.01,
            num_ers: 10,
            num_antennas: 5,
            placement: Placement::default(),
            seed: 1,
        }
    }
}

impl CellConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_distance_m > 0.0 && self.min_distance_m < self.radius_m) {
            return Err(Error::InvalidInput(format!(
                "need 0 < min_distance_m ({}) < radius_m ({})",
                self.min_distance_m, self.radius_m
            )));
        }
        if !(self.pathloss_exponent >= 2.0) {
            return Err(Error::InvalidInput(format!(
                "pathloss_exponent must be >= 2, got {}",
                self.pathloss_exponent
            )));
        }
        if !(self.pathloss_ref_gain > 0.0) {
            return Err(Error::InvalidInput(format!(
                "pathloss_ref_gain must be positive, got {}",
                self.pathloss_ref_gain
            )));
        }
        if self.num_ers == 0 || self.num_antennas == 0 {
            return Err(Error::InvalidInput(
                "num_ers and num_antennas must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Large-scale power gain `g₀ d^{−v}` at distance `d`.
    pub fn pathloss_gain(&self, d: f64) -> f64 {
        self.pathloss_ref_gain * d.powf(-self.pathloss_exponent)
    }

    fn draw_distance(&self, rng: &mut RngStream) -> f64 {
        let (r, r0) = (self.radius_m, self.min_distance_m);
        let u = rng.uniform();
        match self.placement {
            Placement::DiskClamped => (u * r * r).sqrt().max(r0),
            Placement::Annulus => (u * (r * r - r0 * r0) + r0 * r0).sqrt().clamp(r0, r),
            Placement::DistanceUniform => r0 + u * (r - r0),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub distances_m: Vec<f64>,
    pub h: ChannelMatrix,
    pub seed_used: u64,
}

/// Draws one scenario from stream 0 of `cfg.seed`.
pub fn sample_scenario(cfg: &CellConfig) -> Scenario {
    sample_scenario_stream(cfg, 0)
}

/// Draws one scenario from an explicit stream of `cfg.seed`; Monte Carlo
/// trials use one stream each.
pub fn sample_scenario_stream(cfg: &CellConfig, stream_id: u64) -> Scenario {
    let mut rng = rng_stream(cfg.seed, stream_id);
    let (k, n) = (cfg.num_ers, cfg.num_antennas);
    let mut distances = Vec::with_capacity(k);
    let mut data = Vec::with_capacity(k * n);
    for _ in 0..k {
        let d = cfg.draw_distance(&mut rng);
        let amp = cfg.pathloss_gain(d).sqrt();
        distances.push(d);
        for _ in 0..n {
            data.push(rng.complex_normal() * amp);
        }
    }
    Scenario {
        distances_m: distances,
        h: ComplexMatrix::new(k, n, data).expect("sampled channel is finite"),
        seed_used: cfg.seed,
    }
}

/// Serializes a matrix: a `rows cols` header line, then one line per row with
/// real and imaginary parts interleaved, 17 significant digits each.
pub fn matrix_to_text(m: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m
            .row(i)
            .iter()
            .flat_map(|z| [format!("{:.16e}", z.re), format!("{:.16e}", z.im)])
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn matrix_from_text(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("matrix file is empty".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidInput(format!("line {}: bad header: {e}", hline + 1)))?;
    let [rows, cols] = dims[..] else {
        return Err(Error::InvalidInput(format!(
            "line {}: header must be `rows cols`",
            hline + 1
        )));
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (lineno, line) in lines {
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInput(format!("line {}: {e}", lineno + 1)))?;
        if vals.len() != 2 * cols {
            return Err(Error::InvalidInput(format!(
                "line {}: expected {} values, got {}",
                lineno + 1,
                2 * cols,
                vals.len()
            )));
        }
        data.extend(vals.chunks(2).map(|c| Complex64::new(c[0], c[1])));
        seen += 1;
    }
    if seen != rows {
        return Err(Error::InvalidInput(format!(
            "expected {rows} rows, got {seen}"
        )));
    }
    ComplexMatrix::new(rows, cols, data)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, matrix_to_text(m)).map_err(|e| Error::io(path, e))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    matrix_from_text(&text)
}

/// Reads whitespace-separated per-antenna power budgets (watts).
pub fn read_powers(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|t| {
            t.parse::<f64>().map_err(|e| {
                Error::InvalidInput(format!("{}: bad power `{t}`: {e}", path.display()))
            })
        })
        .collect()
}

pub fn powers_to_text(p: &[f64]) -> String {
    let mut out = String::new();
    for v in p {
        let _ = writeln!(out, "{v:.16e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(k: usize, n: usize, seed: u64) -> CellConfig {
        CellConfig {
            num_ers: k,
            num_antennas: n,
            seed,
            ..CellConfig::default()
        }
    }

    #[test]
    fn deterministic() {
        let c = cfg(1, 1, 99);
        assert_eq!(sample_scenario(&c), sample_scenario(&c));
        let c = cfg(10, 5, 99);
        assert_eq!(sample_scenario(&c), sample_scenario(&c));
        assert_ne!(sample_scenario_stream(&c, 1), sample_scenario_stream(&c, 2));
    }

    #[test]
    fn validate_rejects_bad_cells() {
        for bad in [
            CellConfig {
                min_distance_m: 20.0,
                ..CellConfig::default()
            },
            CellConfig {
                pathloss_exponent: 1.5,
                ..CellConfig::default()
            },
            CellConfig {
                pathloss_ref_gain: 0.0,
                ..CellConfig::default()
            },
        ] {
            assert!(bad.validate().is_err());
        }
        assert!(CellConfig::default().validate().is_ok());
    }

    #[test]
    fn annulus_second_moment() {
        // E[d²] for area-uniform placement on [r0, R] is (R² + r0²) / 2.
        let c = CellConfig {
            placement: Placement::Annulus,
            ..CellConfig::default()
        };
        let mut rng = rng_stream(5, 0);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| c.draw_distance(&mut rng).powi(2))
            .sum::<f64>()
            / n as f64;
        let want = (15.0f64.powi(2) + 1.0) / 2.0;
        assert!((mean / want - 1.0).abs() < 0.01, "{mean} vs {want}");
    }

    #[test]
    fn distances_within_cell() {
        for placement in [
            Placement::DiskClamped,
            Placement::Annulus,
            Placement::DistanceUniform,
        ] {
            let c = CellConfig {
                placement,
                num_ers: 1000,
                num_antennas: 1,
                ..CellConfig::default()
            };
            let s = sample_scenario(&c);
            assert!(s.distances_m.iter().all(|&d| (1.0..=15.0).contains(&d)));
        }
    }

    #[test]
    fn clamped_disk_mass_at_minimum() {
        // P(d < r0) = (r0 / R)² for area-uniform placement in the full disk.
        let c = CellConfig::default();
        let mut rng = rng_stream(11, 0);
        let n = 200_000;
        let hits = (0..n).filter(|_| c.draw_distance(&mut rng) == 1.0).count();
        let frac = hits as f64 / n as f64;
        assert!((frac - 1.0 / 225.0).abs() < 0.001, "{frac}");
    }

    #[test]
    fn text_format_exact() {
        let m = ComplexMatrix::from_rows(&[vec![
            Complex64::new(0.1, -2.5e-7),
            Complex64::new(1.0 / 3.0, 12345.678),
        ]]);
        let text = matrix_to_text(&m);
        assert!(text.starts_with("1 2\n"));
        assert!(text.ends_with('\n'));
        assert_eq!(matrix_from_text(&text).unwrap(), m);
    }

    #[test]
    fn text_format_errors() {
        assert!(matrix_from_text("").is_err());
        assert!(matrix_from_text("2 1\n1 0\n").is_err());
        assert!(matrix_from_text("1 2\n1 0 1\n").is_err());
        assert!(matrix_from_text("1 1\nx 0\n").is_err());
    }
}

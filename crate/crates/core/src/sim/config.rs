//! `key = value` experiment configuration.
//!
//! Blank lines and `#` comments are ignored; unknown keys are rejected.
//! Command-line overrides use the same keys and win over the file.

use std::path::{Path, PathBuf};

use crate::beamformers::{Method, PowerBudget};
use crate::channel::{CellConfig, Placement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PowerSplit {
    /// `p_i = p_t / N`.
    #[default]
    Equal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Cell geometry; `num_antennas` is overwritten for each swept N.
    pub cell: CellConfig,
    pub antenna_counts: Vec<usize>,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub p_total_w: f64,
    pub power_split: PowerSplit,
    pub output_path: PathBuf,
    pub seed: u64,
    /// Record solve times; off makes the CSV reproducible byte for byte.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            cell: CellConfig::default(),
            antenna_counts: (1..=25).collect(),
            methods: vec![
                Method::Independent,
                Method::RandomPhase,
                Method::Sub1,
                Method::Sub2,
                Method::PacNewton,
                Method::Spc,
            ],
            trials: 1000,
            p_total_w: 1.0,
            power_split: PowerSplit::Equal,
            output_path: PathBuf::from("results.csv"),
            seed: 1,
            timing: true,
        }
    }
}

impl ExperimentConfig {
    /// Defaults for the solve-time benchmark.
    pub fn bench_default() -> Self {
        Self {
            antenna_counts: vec![5, 10, 15, 20, 25],
            methods: vec![Method::Sub2, Method::Sub1, Method::PacNewton],
            trials: 200,
            output_path: PathBuf::from("bench.csv"),
            ..Self::default()
        }
    }

    pub fn budget(&self, n: usize) -> Result<PowerBudget> {
        match self.power_split {
            PowerSplit::Equal => PowerBudget::equal(self.p_total_w, n),
        }
    }

    pub fn cell_for(&self, n: usize) -> CellConfig {
        CellConfig {
            num_antennas: n,
            seed: self.seed,
            ..self.cell.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, message: String| Error::Parse {
            key: key.into(),
            line: 0,
            message,
        };
        if self.trials == 0 {
            return Err(bad("trials", "must be >= 1".into()));
        }
        if self.antenna_counts.is_empty() || self.antenna_counts.contains(&0) {
            return Err(bad(
                "n_list",
                "must be a non-empty list of counts >= 1".into(),
            ));
        }
        if self.methods.is_empty() {
            return Err(bad("methods", "must name at least one method".into()));
        }
        if !(self.p_total_w > 0.0 && self.p_total_w.is_finite()) {
            return Err(bad(
                "p_total_w",
                format!("must be positive, got {}", self.p_total_w),
            ));
        }
        self.cell_for(1)
            .validate()
            .map_err(|e| bad("cell", e.to_string()))
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let err = |message: String| Error::Parse {
            key: key.to_string(),
            line,
            message,
        };
        fn num<T: std::str::FromStr>(v: &str) -> std::result::Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            v.parse::<T>()
                .map_err(|e| format!("cannot parse `{v}`: {e}"))
        }
        match key {
            "radius_m" => self.cell.radius_m = num(value).map_err(err)?,
            "min_distance_m" => self.cell.min_distance_m = num(value).map_err(err)?,
            "pathloss_exponent" => self.cell.pathloss_exponent = num(value).map_err(err)?,
            "pathloss_ref_gain" => self.cell.pathloss_ref_gain = num(value).map_err(err)?,
            "num_ers" => {
                self.cell.num_ers = num(value).map_err(err)?;
                if self.cell.num_ers == 0 {
                    return Err(err("must be >= 1".into()));
                }
            }
            "placement" => {
                self.cell.placement = Placement::parse(value).ok_or_else(|| {
                    err(format!(
                        "unknown placement `{value}` (disk_clamped, annulus, distance_uniform)"
                    ))
                })?
            }
            "distance_uniform" => {
                if num::<bool>(value).map_err(err)? {
                    self.cell.placement = Placement::DistanceUniform;
                }
            }
            "n_list" => {
                self.antenna_counts = parse_n_list(value).map_err(err)?;
            }
            "methods" => {
                self.methods = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| Method::parse(s).ok_or_else(|| err(format!("unknown method `{s}`"))))
                    .collect::<Result<_>>()?;
                if self.methods.is_empty() {
                    return Err(err("must name at least one method".into()));
                }
            }
            "trials" => {
                self.trials = num(value).map_err(err)?;
                if self.trials == 0 {
                    return Err(err("must be >= 1".into()));
                }
            }
            "p_total_w" => {
                self.p_total_w = num(value).map_err(err)?;
                if !(self.p_total_w > 0.0) {
                    return Err(err("must be positive".into()));
                }
            }
            "power_split" => match value {
                "equal" => self.power_split = PowerSplit::Equal,
                other => return Err(err(format!("unsupported power split `{other}`"))),
            },
            "output" => self.output_path = PathBuf::from(value),
            "seed" => self.seed = num(value).map_err(err)?,
            "timing" => self.timing = num(value).map_err(err)?,
            _ => return Err(err("unknown key".into())),
        }
        Ok(())
    }
}

/// `1,5,10` or ranges such as `1-25` (mixable: `1-5,10,20`).
fn parse_n_list(value: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once('-') {
            let lo: usize = lo
                .trim()
                .parse()
                .map_err(|_| format!("bad range `{part}`"))?;
            let hi: usize = hi
                .trim()
                .parse()
                .map_err(|_| format!("bad range `{part}`"))?;
            if lo > hi {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| format!("bad antenna count `{part}`"))?,
            );
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err("need at least one antenna count, each >= 1".into());
    }
    Ok(out)
}

/// Parses `key = value` text on top of `base`.
pub fn parse_config_text(text: &str, base: ExperimentConfig) -> Result<ExperimentConfig> {
    let mut cfg = base;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                key: line.to_string(),
                line: idx + 1,
                message: "expected `key = value`".into(),
            });
        };
        cfg.set(key.trim(), value.trim(), idx + 1)?;
    }
    Ok(cfg)
}

/// Layers `base`, then the optional file, then `overrides` (reported as line
/// 0), and validates the result.
pub fn parse_config(
    path: Option<&Path>,
    overrides: &[(String, String)],
    base: ExperimentConfig,
) -> Result<ExperimentConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            parse_config_text(&text, base)?
        }
        None => base,
    };
    for (k, v) in overrides {
        cfg.set(k, v, 0)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

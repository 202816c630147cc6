//! Monte Carlo experiment harness behind the `pabeam` binary.

mod config;
mod csv;
mod experiment;

pub use config::{parse_config, parse_config_text, ExperimentConfig, PowerSplit};
pub use csv::{format_sig10, parse_csv, read_csv, rows_to_csv, write_csv, CSV_HEADER};
pub use experiment::{
    run_experiment, run_experiment_detailed, run_timing, ExperimentRun, ResultRow, TrialRecord,
};

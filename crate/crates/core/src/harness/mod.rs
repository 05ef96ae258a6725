//! Experiment orchestration: configuration, seeded multi-repetition
//! training with periodic verification, metrics CSVs and SVG charts.

pub mod config;
pub mod metrics;
pub mod plot;
mod run;
pub mod selftest;
mod verify;

pub use config::{EnvKind, ExperimentConfig, Mode, Overrides, OUT_DIR_ENV};
pub use metrics::{read_metrics, MetricsRow, Table};
pub use plot::emit_plots;
pub use run::{
    metrics_path, policy_path, run_experiment, run_repetition, train, ExperimentOutput, RepetitionResult,
    AGGREGATE_FILE, CONFIG_FILE,
};
pub use verify::verify_policy;

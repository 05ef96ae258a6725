//! Runs a small experiment to disk and renders its plots.
//!
//! `cargo run --release --example experiment_harness -- [out_dir]`

use std::path::PathBuf;

use psyco::harness::{emit_plots, run_experiment, ExperimentConfig};

fn main() -> psyco::Result<()> {
    let out: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "runs/example".into()).into();
    let cfg = ExperimentConfig::from_toml_str(
        r#"
        env = "obstacle_run"
        episodes = 4000
        verify_every = 1000
        verify_cap = 300
        repetitions = 3
        seed = 9
        "#,
    )?;
    let cfg = ExperimentConfig {
        out: out.clone(),
        ..cfg
    };
    let output = run_experiment(&cfg)?;
    for path in output.metrics.iter().chain(&output.policies).chain([&output.aggregate]) {
        println!("wrote {}", path.display());
    }
    for path in emit_plots(&[("obstacle_run".to_string(), out.clone())], &out.join("plots"))? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

//! Compares the Bayesian-confidence and maximum-likelihood Lagrangian
//! weights on Particle Dance from the same initial policy and seed.

use psyco::harness::{train, EnvKind, ExperimentConfig, Mode};

fn main() -> psyco::Result<()> {
    let episodes: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20_000);
    for mode in [Mode::Unconstrained, Mode::Bayesian, Mode::Mle] {
        let cfg = ExperimentConfig {
            env: EnvKind::ParticleDance,
            n_max: 1,
            episodes,
            verify_every: episodes,
            repetitions: 1,
            seed: 5,
            mode,
            ..ExperimentConfig::default()
        };
        let rows = &train(&cfg)?[0].rows;
        let tail = &rows[rows.len().saturating_sub(100)..];
        let sat: u64 = tail.iter().map(|r| r.s_gen).sum();
        let ret = tail.iter().map(|r| r.mean_return).sum::<f64>() / tail.len() as f64;
        let last = rows.last().expect("at least one generation");
        println!(
            "{:<14} return {ret:>8.2}  satisfying {:.3}  lambda {:.3}  verification {}",
            format!("{mode:?}"),
            sat as f64 / (tail.len() * cfg.population) as f64,
            last.lambda,
            last.verify_outcome.as_deref().unwrap_or("-")
        );
    }
    Ok(())
}

//! Trains a Particle Dance policy with the Bayesian Lagrangian weight.
//!
//! `cargo run --release --example particle_dance_snes -- [episodes] [n_max]`

use psyco::envs::{ParticleDance, DEFAULT_HORIZON, PARTICLE_DANCE_REQUIREMENT};
use psyco::es::EsConfig;
use psyco::seed::stream;
use psyco::snes::{snes_generation, LagrangianMode, SnesConfig, SnesState};
use psyco::{bayesian_verify, parse_requirement, Horizon, PolicyParams};

fn main() -> psyco::Result<()> {
    let mut args = std::env::args().skip(1);
    let episodes: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(20_000);
    let n_max: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let env = ParticleDance::new(0.1, n_max, Default::default());
    let req = parse_requirement(PARTICLE_DANCE_REQUIREMENT)?;
    let horizon = Horizon::new(DEFAULT_HORIZON)?;
    let cfg = SnesConfig::new(EsConfig::default(), LagrangianMode::BayesianConfidence);
    let mut rng = stream(1, &[0]);
    let mut state = SnesState::new(PolicyParams::random(env.policy_shape(), &mut rng));

    let generations = episodes / cfg.es.population;
    for _ in 0..generations {
        let (next, report) = snes_generation(&state, &cfg, &req, &env, horizon, &mut rng)?;
        state = next;
        if report.generation % 100 == 0 {
            println!(
                "gen {:>5}  return {:>8.2}  satisfied {:>2}/{}  c_sat {:.4}  lambda {:.3}",
                report.generation,
                report.mean_return(),
                report.s_gen,
                report.returns.len(),
                report.c_sat,
                report.lambda
            );
        }
    }
    let verdict = bayesian_verify(&env, &state.theta, &req, horizon, 1000, &mut stream(1, &[1]))?;
    println!(
        "verification: {} after {} episodes (c_sat {:.4})",
        verdict.outcome.as_str(),
        verdict.episodes_used,
        verdict.c_sat
    );
    Ok(())
}

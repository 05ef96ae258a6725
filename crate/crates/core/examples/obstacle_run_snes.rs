//! Trains an Obstacle Run policy and rolls out one episode of the result.

use psyco::envs::{ObstacleRun, DEFAULT_HORIZON, OBSTACLE_RUN_REQUIREMENT};
use psyco::es::EsConfig;
use psyco::seed::stream;
use psyco::snes::{snes_generation, LagrangianMode, SnesConfig, SnesState};
use psyco::{episode_return, parse_requirement, rollout, Horizon, PolicyParams};

fn main() -> psyco::Result<()> {
    let episodes: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10_000);
    let env = ObstacleRun::new(4);
    let req = parse_requirement(OBSTACLE_RUN_REQUIREMENT)?;
    let horizon = Horizon::new(DEFAULT_HORIZON)?;
    let cfg = SnesConfig::new(EsConfig::default(), LagrangianMode::BayesianConfidence);
    let mut rng = stream(3, &[0]);
    let mut state = SnesState::new(PolicyParams::random(env.policy_shape(), &mut rng));

    for _ in 0..episodes / cfg.es.population {
        let (next, report) = snes_generation(&state, &cfg, &req, &env, horizon, &mut rng)?;
        state = next;
        if report.generation % 50 == 0 {
            println!(
                "gen {:>4}  steps to target {:>5.1}  c_sat {:.4}  lambda {:.3}",
                report.generation,
                -report.mean_return(),
                report.c_sat,
                report.lambda
            );
        }
    }

    let episode = rollout(&env, &state.theta, horizon, &mut stream(3, &[1]))?;
    for (i, s) in episode.states().enumerate() {
        println!(
            "t={i:>2} agent {:?} obstacle {:?} collisions {}",
            s.agent, s.obstacle, s.collisions
        );
    }
    println!("return {}", episode_return(&episode));
    Ok(())
}

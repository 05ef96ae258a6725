use std::path::Path;

use crate::cmdp::check_dimensions;
use crate::error::Result;
use crate::policy::PolicyParams;
use crate::seed::{stream, TAG_VERIFY};
use crate::verify::{bayesian_verify, Verdict};

use super::config::{EnvKind, ExperimentConfig};

/// Verifies the policy snapshot at `snapshot` on the environment and
/// requirement described by `cfg`, with at most `cap` episodes.
pub fn verify_policy(snapshot: &Path, cfg: &ExperimentConfig, cap: u64, seed: u64) -> Result<Verdict> {
    cfg.validate()?;
    let theta = PolicyParams::load(snapshot)?;
    let req = cfg.requirement()?;
    let horizon = cfg.horizon()?;
    let mut rng = stream(seed, &[TAG_VERIFY]);
    match cfg.env {
        EnvKind::ParticleDance => {
            let env = cfg.particle_dance();
            check_dimensions(&env, &theta)?;
            bayesian_verify(&env, &theta, &req, horizon, cap, &mut rng)
        }
        EnvKind::ObstacleRun => {
            let env = cfg.obstacle_run();
            check_dimensions(&env, &theta)?;
            bayesian_verify(&env, &theta, &req, horizon, cap, &mut rng)
        }
    }
}

//! Fast consistency checks runnable from the command line.

use rand::Rng;

use crate::cmdp::{rollout, Episode};
use crate::envs::{BernoulliToy, ObstacleRun};
use crate::error::Result;
use crate::es::EsConfig;
use crate::pctl::{cumulative_cost, parse_path, parse_requirement, satisfies, Labeling};
use crate::policy::PolicyParams;
use crate::seed::stream;
use crate::snes::{lambda_confidence, lambda_mle, snes_generation, LagrangianMode, SnesConfig, SnesState};
use crate::special::beta_cdf;
use crate::verify::{bayesian_verify, Outcome};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn zero_cost_iff_satisfied() -> Result<(bool, String)> {
    let lab: Labeling<u8> = Labeling::new()
        .with("a", |s: &u8| s & 1 != 0)
        .with("b", |s: &u8| s & 2 != 0);
    let formulas = ["X a", "a U b", "(a | b) U[<=3] !a", "G (a | !b)", "F (a & b)"]
        .iter()
        .map(|t| parse_path(t))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream(0, &[0xC0FFEE]);
    let mut mismatches = 0;
    let trials = 2000;
    for _ in 0..trials {
        let len = rng.gen_range(1..=10);
        let path: Vec<u8> = (0..=len).map(|_| rng.gen_range(0..4)).collect();
        let e = Episode::from_path(&path);
        for phi in &formulas {
            if satisfies(&e, phi, &lab)? != (cumulative_cost(&e, phi, &lab)? == 0.0) {
                mismatches += 1;
            }
        }
    }
    Ok((
        mismatches == 0,
        format!(
            "{} episode/formula pairs, {mismatches} mismatches",
            trials * formulas.len()
        ),
    ))
}

fn beta_closed_forms() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for &x in &[0.1, 0.37, 0.85, 0.98] {
        for &k in &[1.0, 2.5, 17.0, 150.0] {
            worst = worst.max((beta_cdf(x, k, 1.0)? - x.powf(k)).abs());
            worst = worst.max((beta_cdf(x, 1.0, k)? - (1.0 - (1.0 - x).powf(k))).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
}

fn lambda_values() -> Result<(bool, String)> {
    let ok = lambda_confidence(0.98, 0.98) == 0.0
        && lambda_confidence(1.0, 0.98) == 1.0
        && (lambda_confidence(0.99, 0.98) - 0.5).abs() < 1e-12
        && lambda_mle(18, 20, 0.9)? == 0.0
        && lambda_mle(20, 20, 0.9)? == 1.0
        && (lambda_mle(19, 20, 0.9)? - 0.5).abs() < 1e-12;
    Ok((ok, "confidence and likelihood boundary values".into()))
}

fn toy_verification() -> Result<(bool, String)> {
    let env = BernoulliToy::new(1.0);
    let req = parse_requirement("P[>=0.5](G safe) with C[>=0.9]")?;
    let theta = PolicyParams::zeros(env.policy_shape());
    let v = bayesian_verify(&env, &theta, &req, env.horizon(), 100, &mut stream(0, &[1]))?;
    let ok = v.outcome == Outcome::Satisfied && v.episodes_used == 3;
    Ok((
        ok,
        format!(
            "{} after {} episodes, c_sat {:.4}",
            v.outcome.as_str(),
            v.episodes_used,
            v.c_sat
        ),
    ))
}

fn snes_smoke() -> Result<(bool, String)> {
    let env = ObstacleRun::default();
    let req = parse_requirement(crate::envs::OBSTACLE_RUN_REQUIREMENT)?;
    let cfg = SnesConfig::new(EsConfig::default(), LagrangianMode::BayesianConfidence);
    let mut state = SnesState::new(PolicyParams::random(env.policy_shape(), &mut stream(0, &[2])));
    let mut rng = stream(0, &[3]);
    let horizon = crate::cmdp::Horizon::new(50)?;
    for _ in 0..5 {
        state = snes_generation(&state, &cfg, &req, &env, horizon, &mut rng)?.0;
    }
    let e = rollout(&env, &state.theta, horizon, &mut rng)?;
    let ok = state.posterior().trials() == 100 && e.len() <= 50;
    Ok((
        ok,
        format!(
            "5 generations, posterior {:?}, c_sat {:.4}",
            state.posterior(),
            state.c_sat()
        ),
    ))
}

/// Runs every check; the run passes when all of them do.
pub fn selftest() -> Vec<Check> {
    vec![
        check("zero cost iff satisfied", zero_cost_iff_satisfied),
        check("beta closed forms", beta_closed_forms),
        check("lambda values", lambda_values),
        check("toy verification", toy_verification),
        check("snes smoke run", snes_smoke),
    ]
}

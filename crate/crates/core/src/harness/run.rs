//! Seeded training runs with interleaved verification.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::cmdp::{check_dimensions, Environment};
use crate::error::{Error, Result};
use crate::pctl::Requirement;
use crate::policy::PolicyParams;
use crate::seed::{stream, TAG_INIT, TAG_TRAIN, TAG_VERIFY};
use crate::snes::{snes_generation, SnesState};
use crate::verify::{bayesian_verify, Verdict};

use super::config::{EnvKind, ExperimentConfig};
use super::metrics::{aggregate, write_aggregate, write_metrics, MetricsRow, RollingWindow, ROLLING_WINDOW};

/// Everything one repetition produced.
#[derive(Debug, Clone)]
pub struct RepetitionResult {
    pub repetition: u32,
    pub rows: Vec<MetricsRow>,
    pub policy: PolicyParams,
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub repetitions: Vec<RepetitionResult>,
    pub metrics: Vec<PathBuf>,
    pub aggregate: PathBuf,
    pub policies: Vec<PathBuf>,
}

pub fn metrics_path(dir: &Path, repetition: u32) -> PathBuf {
    dir.join(format!("metrics_rep{repetition}.csv"))
}

pub fn policy_path(dir: &Path, repetition: u32) -> PathBuf {
    dir.join(format!("policy_rep{repetition}.txt"))
}

pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const CONFIG_FILE: &str = "config.toml";

/// Trains every repetition in parallel without touching the filesystem.
pub fn train(cfg: &ExperimentConfig) -> Result<Vec<RepetitionResult>> {
    cfg.validate()?;
    (0..cfg.repetitions)
        .into_par_iter()
        .map(|rep| run_repetition(cfg, rep))
        .collect()
}

/// Trains, then writes per-repetition metrics, the aggregate, final
/// policies and the resolved configuration into `cfg.out`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let config_path = cfg.out.join(CONFIG_FILE);
    std::fs::write(&config_path, cfg.to_toml_string()).map_err(|e| Error::io(&config_path, e))?;

    let repetitions = train(cfg)?;
    let mut metrics = Vec::new();
    let mut policies = Vec::new();
    for r in &repetitions {
        let m = metrics_path(&cfg.out, r.repetition);
        write_metrics(&m, &r.rows)?;
        metrics.push(m);
        let p = policy_path(&cfg.out, r.repetition);
        r.policy.save(&p)?;
        policies.push(p);
    }
    let runs: Vec<Vec<MetricsRow>> = repetitions.iter().map(|r| r.rows.clone()).collect();
    let aggregate_path = cfg.out.join(AGGREGATE_FILE);
    write_aggregate(&aggregate_path, &aggregate(&runs)?)?;
    Ok(ExperimentOutput {
        repetitions,
        metrics,
        aggregate: aggregate_path,
        policies,
    })
}

/// Trains repetition `rep` on the configured environment.
pub fn run_repetition(cfg: &ExperimentConfig, rep: u32) -> Result<RepetitionResult> {
    let req = cfg.requirement()?;
    match cfg.env {
        EnvKind::ParticleDance => {
            let env = cfg.particle_dance();
            let shape = env.policy_shape();
            run_on(&env, shape, cfg, &req, rep)
        }
        EnvKind::ObstacleRun => {
            let env = cfg.obstacle_run();
            let shape = env.policy_shape();
            run_on(&env, shape, cfg, &req, rep)
        }
    }
}

fn run_on<E: Environment>(
    env: &E,
    shape: crate::policy::PolicyShape,
    cfg: &ExperimentConfig,
    req: &Requirement,
    rep: u32,
) -> Result<RepetitionResult> {
    let rep_tag = u64::from(rep);
    let horizon = cfg.horizon()?;
    let snes = cfg.snes();
    let theta = PolicyParams::random(shape, &mut stream(cfg.seed, &[TAG_INIT, rep_tag]));
    check_dimensions(env, &theta)?;
    let mut state = SnesState::new(theta);
    let mut rng = stream(cfg.seed, &[TAG_TRAIN, rep_tag]);
    let mut window = RollingWindow::new(ROLLING_WINDOW);
    let mut rows = Vec::with_capacity(cfg.generations() as usize);
    let n = cfg.population as u64;

    for _ in 0..cfg.generations() {
        let (next, report) = snes_generation(&state, &snes, req, env, horizon, &mut rng)?;
        state = next;
        for (r, c) in report.returns.iter().zip(&report.costs) {
            window.push(*r, *c);
        }
        let episodes = report.generation * n;
        let checkpoint = episodes / cfg.verify_every > (episodes - n) / cfg.verify_every;
        let verdict: Option<Verdict> = if checkpoint {
            let mut vrng = stream(cfg.seed, &[TAG_VERIFY, rep_tag, report.generation]);
            Some(bayesian_verify(
                env,
                &state.theta,
                req,
                horizon,
                cfg.verify_cap,
                &mut vrng,
            )?)
        } else {
            None
        };
        let split = |satisfied: bool| {
            let xs: Vec<f64> = report
                .returns
                .iter()
                .zip(&report.costs)
                .filter(|(_, c)| (**c == 0.0) == satisfied)
                .map(|(r, _)| *r)
                .collect();
            (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
        };
        let (return_sat_100, cost_sat_100) = window.split_means(true);
        let (return_viol_100, cost_viol_100) = window.split_means(false);
        rows.push(MetricsRow {
            repetition: rep,
            generation: report.generation,
            episodes,
            mean_return: report.mean_return(),
            mean_cost: report.mean_cost(),
            s_gen: report.s_gen,
            return_sat_gen: split(true),
            return_viol_gen: split(false),
            sat_proportion_100: window.sat_proportion(),
            return_sat_100,
            return_viol_100,
            cost_sat_100,
            cost_viol_100,
            s_total: report.posterior.s,
            v_total: report.posterior.v,
            c_sat: report.c_sat,
            lambda: report.lambda,
            verify_outcome: verdict.as_ref().map(|v| v.outcome.as_str().to_string()),
            verify_c_sat: verdict.as_ref().map(|v| v.c_sat),
            verify_episodes: verdict.as_ref().map(|v| v.episodes_used),
        });
    }
    Ok(RepetitionResult {
        repetition: rep,
        rows,
        policy: state.theta,
    })
}

//! Safe neural evolutionary strategies.
//!
//! Each generation evaluates `N` perturbed policies for one episode each,
//! counts the episodes with zero cumulative cost, folds that count into a
//! running Beta posterior and derives the Lagrangian weight `lambda` from the
//! posterior confidence that the satisfaction probability exceeds `p_req`.
//! The update then ascends `lambda * R - (1 - lambda) * C` using separately
//! normalized returns and costs.
//!
//! Posterior counts are accumulated per generation (`s += s_gen`,
//! `v += N - s_gen`), so `s + v` always equals the number of episodes seen.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cmdp::{episode_return, rollout, Environment, Horizon};
use crate::error::{Error, Result};
use crate::es::{check_finite, normalize_with, sample_offspring, weighted_noise_sum, EsConfig};
use crate::pctl::{cumulative_cost, Requirement};
use crate::policy::PolicyParams;
use crate::seed::StreamRng;
use crate::verify::BetaPosterior;

/// `max(0, c_sat - c_req) / (1 - c_req)`.
pub fn lambda_confidence(c_sat: f64, c_req: f64) -> f64 {
    ((c_sat - c_req).max(0.0) / (1.0 - c_req)).min(1.0)
}

/// Maximum-likelihood variant: `p_hat = s / trials`, then
/// `max(0, p_hat - p_req) / (1 - p_req)`.
pub fn lambda_mle(satisfied: u64, trials: u64, p_req: f64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Config(
            "maximum-likelihood estimate needs at least one trial".into(),
        ));
    }
    let p_hat = satisfied as f64 / trials as f64;
    Ok(((p_hat - p_req).max(0.0) / (1.0 - p_req)).min(1.0))
}

/// Which satisfaction counts feed the maximum-likelihood estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MleEstimate {
    /// All episodes seen so far.
    #[default]
    Cumulative,
    /// The `N` episodes of the current generation.
    PerGeneration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LagrangianMode {
    BayesianConfidence,
    MaxLikelihood(MleEstimate),
    /// `lambda` pinned to a constant; `Fixed(1.0)` is unconstrained ES.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnesConfig {
    pub es: EsConfig,
    pub mode: LagrangianMode,
    /// Number of most recent generations whose counts enter the posterior
    /// used for `c_sat`; `None` keeps the full history.
    pub posterior_window: Option<usize>,
}

impl SnesConfig {
    pub fn new(es: EsConfig, mode: LagrangianMode) -> Self {
        SnesConfig {
            es,
            mode,
            posterior_window: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.es.validate()?;
        if let LagrangianMode::Fixed(l) = self.mode {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::Config(format!("fixed lambda must lie in [0, 1], got {l}")));
            }
        }
        if self.posterior_window == Some(0) {
            return Err(Error::Config("posterior window must be at least one generation".into()));
        }
        Ok(())
    }
}

/// Running satisfaction statistics and the current Lagrangian weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintTracker {
    /// Counts over every episode seen.
    pub total: BetaPosterior,
    recent: VecDeque<(u64, u64)>,
    pub c_sat: f64,
    pub lambda: f64,
}

impl Default for ConstraintTracker {
    fn default() -> Self {
        ConstraintTracker {
            total: BetaPosterior::default(),
            recent: VecDeque::new(),
            c_sat: 0.0,
            lambda: 1.0,
        }
    }
}

impl ConstraintTracker {
    /// Posterior used for the confidence estimate.
    pub fn posterior(&self, window: Option<usize>) -> BetaPosterior {
        match window {
            None => self.total,
            Some(_) => self
                .recent
                .iter()
                .fold(BetaPosterior::default(), |p, &(s, n)| p.update_batch(s, n)),
        }
    }

    /// Folds one generation's `satisfied` out of `trials` episodes in and
    /// recomputes `c_sat` and `lambda`.
    pub fn observe(&mut self, satisfied: u64, trials: u64, p_req: f64, c_req: f64, cfg: &SnesConfig) -> Result<()> {
        self.total = self.total.update_batch(satisfied, trials);
        if let Some(w) = cfg.posterior_window {
            self.recent.push_back((satisfied, trials));
            while self.recent.len() > w {
                self.recent.pop_front();
            }
        }
        self.c_sat = self.posterior(cfg.posterior_window).confidence_above(p_req)?;
        self.lambda = match cfg.mode {
            LagrangianMode::BayesianConfidence => lambda_confidence(self.c_sat, c_req),
            LagrangianMode::MaxLikelihood(MleEstimate::Cumulative) => {
                lambda_mle(self.total.s, self.total.trials(), p_req)?
            }
            LagrangianMode::MaxLikelihood(MleEstimate::PerGeneration) => lambda_mle(satisfied, trials, p_req)?,
            LagrangianMode::Fixed(l) => l,
        };
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnesState {
    pub theta: PolicyParams,
    pub tracker: ConstraintTracker,
    pub generation: u64,
}

impl SnesState {
    /// No episodes observed and `lambda = 1`.
    pub fn new(theta: PolicyParams) -> Self {
        SnesState {
            theta,
            tracker: ConstraintTracker::default(),
            generation: 0,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.tracker.lambda
    }

    pub fn c_sat(&self) -> f64 {
        self.tracker.c_sat
    }

    pub fn posterior(&self) -> BetaPosterior {
        self.tracker.total
    }
}

/// Return and cumulative cost of one offspring episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub ret: f64,
    pub cost: f64,
}

/// Per-generation record handed to the harness.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationReport {
    /// 1-based index of the generation just completed.
    pub generation: u64,
    pub returns: Vec<f64>,
    pub costs: Vec<f64>,
    pub s_gen: u64,
    pub posterior: BetaPosterior,
    pub c_sat: f64,
    pub lambda: f64,
}

impl GenerationReport {
    pub fn satisfied(&self, i: usize) -> bool {
        self.costs[i] == 0.0
    }

    pub fn mean_return(&self) -> f64 {
        self.returns.iter().sum::<f64>() / self.returns.len() as f64
    }

    pub fn mean_cost(&self) -> f64 {
        self.costs.iter().sum::<f64>() / self.costs.len() as f64
    }
}

/// `theta + a * lambda * sum R_j eps_j - a * (1 - lambda) * sum C_j eps_j`
/// with `a = alpha / (sigma N)` and returns/costs normalized separately.
pub fn snes_update(
    theta: &[f64],
    noise: &[&[f64]],
    returns: &[f64],
    costs: &[f64],
    lambda: f64,
    cfg: &EsConfig,
) -> Result<Vec<f64>> {
    check_finite("return", returns)?;
    check_finite("cost", costs)?;
    let r_dir = weighted_noise_sum(noise, &normalize_with(returns, cfg.std_mode)?, theta.len());
    let c_dir = weighted_noise_sum(noise, &normalize_with(costs, cfg.std_mode)?, theta.len());
    let a = cfg.step_scale();
    let (wr, wc) = (a * lambda, a * (1.0 - lambda));
    Ok(theta
        .iter()
        .zip(r_dir.iter().zip(&c_dir))
        .map(|(t, (r, c))| t + wr * r - wc * c)
        .collect())
}

/// One SNES generation over flat parameters with a caller-supplied
/// evaluator; an offspring satisfies the constraint when its cost is zero.
#[allow(clippy::too_many_arguments)]
pub fn snes_step<R, F>(
    theta: &[f64],
    tracker: &ConstraintTracker,
    generation: u64,
    cfg: &SnesConfig,
    p_req: f64,
    c_req: f64,
    mut evaluate: F,
    rng: &mut R,
) -> Result<(Vec<f64>, ConstraintTracker, GenerationReport)>
where
    R: Rng + ?Sized,
    F: FnMut(&[f64], &mut StreamRng) -> Result<Evaluation>,
{
    cfg.validate()?;
    let offspring = sample_offspring(theta.len(), &cfg.es, rng);
    let mut returns = Vec::with_capacity(offspring.len());
    let mut costs = Vec::with_capacity(offspring.len());
    for o in &offspring {
        let ev = evaluate(&o.perturbed(theta), &mut o.episode_rng())?;
        returns.push(ev.ret);
        costs.push(ev.cost);
    }
    check_finite("return", &returns)?;
    check_finite("cost", &costs)?;

    let s_gen = costs.iter().filter(|c| **c == 0.0).count() as u64;
    let mut tracker = tracker.clone();
    tracker.observe(s_gen, offspring.len() as u64, p_req, c_req, cfg)?;

    let noise: Vec<&[f64]> = offspring.iter().map(|o| o.noise.as_slice()).collect();
    let next = snes_update(theta, &noise, &returns, &costs, tracker.lambda, &cfg.es)?;
    let report = GenerationReport {
        generation: generation + 1,
        returns,
        costs,
        s_gen,
        posterior: tracker.total,
        c_sat: tracker.c_sat,
        lambda: tracker.lambda,
    };
    Ok((next, tracker, report))
}

/// One SNES generation on `env` against `req`.
pub fn snes_generation<E, R>(
    state: &SnesState,
    cfg: &SnesConfig,
    req: &Requirement,
    env: &E,
    horizon: Horizon,
    rng: &mut R,
) -> Result<(SnesState, GenerationReport)>
where
    E: Environment,
    R: Rng + ?Sized,
{
    env.labeling().check(req.path.atoms())?;
    let shape = state.theta.shape();
    let (flat, tracker, report) = snes_step(
        state.theta.as_slice(),
        &state.tracker,
        state.generation,
        cfg,
        req.p_req,
        req.c_req,
        |params, episode_rng| {
            let policy = PolicyParams::unflatten(params.to_vec(), shape)?;
            let episode = rollout(env, &policy, horizon, episode_rng)?;
            Ok(Evaluation {
                ret: episode_return(&episode),
                cost: cumulative_cost(&episode, &req.path, env.labeling())?,
            })
        },
        rng,
    )?;
    let next = SnesState {
        theta: PolicyParams::unflatten(flat, shape)?,
        tracker,
        generation: report.generation,
    };
    Ok((next, report))
}

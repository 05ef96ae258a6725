//! Beta-posterior confidence in constraint satisfaction and sequential
//! Bayesian verification of a frozen policy.

use rand::Rng;

use crate::cmdp::{rollout, Environment, Horizon};
use crate::error::{Error, Result};
use crate::pctl::{cumulative_cost, Requirement};
use crate::policy::PolicyParams;
use crate::special::beta_sf;

/// Satisfying and violating episode counts; the posterior over the
/// satisfaction probability is `Beta(s + 1, v + 1)` (uniform prior).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BetaPosterior {
    pub s: u64,
    pub v: u64,
}

impl BetaPosterior {
    pub fn new(s: u64, v: u64) -> Self {
        BetaPosterior { s, v }
    }

    #[must_use]
    pub fn update(self, satisfied: bool) -> Self {
        if satisfied {
            BetaPosterior { s: self.s + 1, ..self }
        } else {
            BetaPosterior { v: self.v + 1, ..self }
        }
    }

    /// Adds a batch of `satisfied` successes out of `trials`.
    #[must_use]
    pub fn update_batch(self, satisfied: u64, trials: u64) -> Self {
        debug_assert!(satisfied <= trials);
        BetaPosterior {
            s: self.s + satisfied,
            v: self.v + (trials - satisfied),
        }
    }

    pub fn trials(&self) -> u64 {
        self.s + self.v
    }

    pub fn alpha(&self) -> f64 {
        self.s as f64 + 1.0
    }

    pub fn beta(&self) -> f64 {
        self.v as f64 + 1.0
    }

    /// `c_sat`: posterior mass above `p_req`.
    pub fn confidence_above(&self, p_req: f64) -> Result<f64> {
        beta_sf(p_req, self.alpha(), self.beta())
    }
}

pub fn confidence_above(post: BetaPosterior, p_req: f64) -> Result<f64> {
    post.confidence_above(p_req)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Satisfied,
    Violated,
    /// The episode cap was reached before either confidence bound.
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Satisfied => "satisfied",
            Outcome::Violated => "violated",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub c_sat: f64,
    pub episodes_used: u64,
    pub posterior: BetaPosterior,
}

/// Sequential test driven by a stream of satisfaction observations.
///
/// Stops with `Satisfied` once `c_sat >= c_req`, with `Violated` once
/// `1 - c_sat >= c_req`, and with `Inconclusive` after `max_episodes`
/// observations.
pub fn sequential_verdict(
    p_req: f64,
    c_req: f64,
    max_episodes: u64,
    mut observe: impl FnMut() -> Result<bool>,
) -> Result<Verdict> {
    if max_episodes == 0 {
        return Err(Error::Config("verification needs at least one episode".into()));
    }
    let mut posterior = BetaPosterior::default();
    loop {
        posterior = posterior.update(observe()?);
        let c_sat = posterior.confidence_above(p_req)?;
        let outcome = if c_sat >= c_req {
            Some(Outcome::Satisfied)
        } else if 1.0 - c_sat >= c_req {
            Some(Outcome::Violated)
        } else if posterior.trials() >= max_episodes {
            Some(Outcome::Inconclusive)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            return Ok(Verdict {
                outcome,
                c_sat,
                episodes_used: posterior.trials(),
                posterior,
            });
        }
    }
}

/// Verifies the frozen policy `theta` against `req` by rolling out episodes
/// and testing each for zero cumulative cost.
pub fn bayesian_verify<E: Environment, R: Rng + ?Sized>(
    env: &E,
    theta: &PolicyParams,
    req: &Requirement,
    horizon: Horizon,
    max_episodes: u64,
    rng: &mut R,
) -> Result<Verdict> {
    env.labeling().check(req.path.atoms())?;
    sequential_verdict(req.p_req, req.c_req, max_episodes, || {
        let episode = rollout(env, theta, horizon, rng)?;
        Ok(cumulative_cost(&episode, &req.path, env.labeling())? == 0.0)
    })
}

//! Policy synthesis for constrained MDPs under probabilistic constraints.
//!
//! The crate couples three pieces:
//!
//! * a bounded PCTL constraint language ([`pctl`]) whose path formulas compile
//!   to episode-level cumulative costs that are zero exactly when the episode
//!   satisfies the formula,
//! * Beta-posterior bookkeeping and sequential Bayesian verification of a
//!   frozen policy ([`verify`]),
//! * evolutionary strategies ([`es`]) and their safe variant SNES ([`snes`]),
//!   which rebalances return against cost using the learner's own confidence
//!   that the probabilistic constraint holds.
//!
//! [`envs`] ships the Particle Dance and Obstacle Run benchmarks and
//! [`harness`] runs seeded multi-repetition experiments that write metrics
//! CSVs and SVG charts. Runnable walkthroughs live in `examples/`.

pub mod cmdp;
pub mod envs;
pub mod error;
pub mod es;
pub mod harness;
pub mod pctl;
pub mod policy;
pub mod seed;
pub mod snes;
pub mod special;
pub mod verify;

pub use cmdp::{episode_return, rollout, Action, Environment, Episode, Horizon, Transition};
pub use error::{Error, Result};
pub use es::{es_generation, normalize, EsConfig};
pub use pctl::{cumulative_cost, parse_requirement, satisfies, Labeling, PathFormula, Requirement, StateFormula};
pub use policy::{ActionDecoder, PolicyParams, PolicyShape};
pub use snes::{lambda_confidence, lambda_mle, LagrangianMode, SnesConfig, SnesState};
pub use special::{beta_cdf, beta_sf};
pub use verify::{bayesian_verify, confidence_above, BetaPosterior, Outcome, Verdict};

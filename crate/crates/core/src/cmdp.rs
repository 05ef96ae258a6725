//! Environment contract, episode rollout and return accounting.

use std::fmt::Debug;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pctl::Labeling;
use crate::policy::{ActionDecoder, PolicyParams};

/// An action as produced by a policy's decoder.
#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Continuous(Vec<f64>),
    Discrete(usize),
}

/// A constrained MDP without its cost function; costs come from a
/// requirement's path formula evaluated through [`Environment::labeling`].
pub trait Environment {
    type State: Clone + Debug + PartialEq;

    /// Length of the flat observation vector handed to the policy.
    fn observation_dim(&self) -> usize;

    fn action_decoder(&self) -> &ActionDecoder;

    fn reset<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::State;

    /// Samples a successor state and returns it with the transition reward.
    fn step<R: Rng + ?Sized>(&self, state: &Self::State, action: &Action, rng: &mut R) -> Result<(Self::State, f64)>;

    fn observe(&self, state: &Self::State, out: &mut [f64]);

    fn is_terminal(&self, _state: &Self::State) -> bool {
        false
    }

    fn labeling(&self) -> &Labeling<Self::State>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition<S> {
    pub pre_state: S,
    pub action: Action,
    pub post_state: S,
    pub reward: f64,
    /// Step cost; zero unless the episode was annotated with
    /// [`crate::pctl::annotate_costs`].
    pub cost: f64,
}

/// A finite rollout `s_0 -a_0-> s_1 ... -> s_L` with `L = transitions.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Episode<S> {
    pub initial_state: S,
    pub transitions: Vec<Transition<S>>,
    pub initial_cost: f64,
}

impl<S: Clone> Episode<S> {
    pub fn new(initial_state: S) -> Self {
        Episode {
            initial_state,
            transitions: Vec::new(),
            initial_cost: 0.0,
        }
    }

    /// Builds an episode from a state path, with unit actions and zero rewards.
    pub fn from_path(path: &[S]) -> Self {
        assert!(!path.is_empty(), "a path has at least an initial state");
        let transitions = path
            .windows(2)
            .map(|w| Transition {
                pre_state: w[0].clone(),
                action: Action::Discrete(0),
                post_state: w[1].clone(),
                reward: 0.0,
                cost: 0.0,
            })
            .collect();
        Episode {
            initial_state: path[0].clone(),
            transitions,
            initial_cost: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    /// The `i`-th state of the path, `0 <= i <= len()`.
    pub fn state(&self, i: usize) -> &S {
        if i == 0 {
            &self.initial_state
        } else {
            &self.transitions[i - 1].post_state
        }
    }

    pub fn states(&self) -> impl Iterator<Item = &S> {
        std::iter::once(&self.initial_state).chain(self.transitions.iter().map(|t| &t.post_state))
    }
}

/// Episode length bound `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Horizon(usize);

impl Horizon {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("horizon must be at least 2, got {n}")));
        }
        Ok(Horizon(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Checks that `policy` fits the observation and action arity of `env`.
pub fn check_dimensions<E: Environment>(env: &E, policy: &PolicyParams) -> Result<()> {
    let shape = policy.shape();
    let (obs, act) = (env.observation_dim(), env.action_decoder().arity());
    if shape.input != obs || shape.output != act {
        return Err(Error::Config(format!(
            "policy maps {} -> {} but the environment observes {} values and expects {} action outputs",
            shape.input, shape.output, obs, act
        )));
    }
    Ok(())
}

/// Runs `policy` for at most `horizon` steps, stopping early when the
/// environment's termination predicate fires (also at reset).
pub fn rollout<E: Environment, R: Rng + ?Sized>(
    env: &E,
    policy: &PolicyParams,
    horizon: Horizon,
    rng: &mut R,
) -> Result<Episode<E::State>> {
    check_dimensions(env, policy)?;
    let mut state = env.reset(rng);
    let mut episode = Episode::new(state.clone());
    episode.transitions.reserve(horizon.get());

    let mut obs = vec![0.0; env.observation_dim()];
    let mut hidden = vec![0.0; policy.shape().hidden];
    let mut out = vec![0.0; policy.shape().output];
    for _ in 0..horizon.get() {
        if env.is_terminal(&state) {
            break;
        }
        env.observe(&state, &mut obs);
        policy.forward_into(&obs, &mut hidden, &mut out)?;
        let action = env.action_decoder().decode(&out)?;
        let (next, reward) = env.step(&state, &action, rng)?;
        episode.transitions.push(Transition {
            pre_state: state,
            action,
            post_state: next.clone(),
            reward,
            cost: 0.0,
        });
        state = next;
    }
    Ok(episode)
}

/// Undiscounted sum of rewards, accumulated left to right.
pub fn episode_return<S>(episode: &Episode<S>) -> f64 {
    episode.transitions.iter().fold(0.0, |acc, t| acc + t.reward)
}

use rand::Rng;

use crate::cmdp::{Action, Environment};
use crate::error::{Error, Result};
use crate::pctl::Labeling;
use crate::policy::{ActionDecoder, PolicyShape};

/// Largest grid coordinate; cells are `{0, ..., GRID_MAX}^2`.
pub const GRID_MAX: i64 = 4;

/// Stay, right, up, left, down; indexed by the decoded action.
pub const MOVES: [[i64; 2]; 5] = [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]];

const TARGET: [i64; 2] = [0, 0];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstacleRunState {
    pub agent: [i64; 2],
    pub obstacle: [i64; 2],
    pub collisions: u32,
}

#[derive(Debug)]
pub struct ObstacleRun {
    pub n_max: u32,
    fixed_start: Option<ObstacleRunState>,
    decoder: ActionDecoder,
    labeling: Labeling<ObstacleRunState>,
}

impl Default for ObstacleRun {
    fn default() -> Self {
        ObstacleRun::new(4)
    }
}

fn shift(p: [i64; 2], m: [i64; 2]) -> [i64; 2] {
    [(p[0] + m[0]).clamp(0, GRID_MAX), (p[1] + m[1]).clamp(0, GRID_MAX)]
}

impl ObstacleRun {
    pub fn new(n_max: u32) -> Self {
        let labeling = Labeling::new()
            .with("off_target", |s: &ObstacleRunState| s.agent != TARGET)
            .with("within_budget", move |s: &ObstacleRunState| s.collisions <= n_max);
        ObstacleRun {
            n_max,
            fixed_start: None,
            decoder: ActionDecoder::DiscreteArgmax { arity: MOVES.len() },
            labeling,
        }
    }

    /// Replaces the random initial state by `start`.
    pub fn with_fixed_start(mut self, start: ObstacleRunState) -> Self {
        self.fixed_start = Some(start);
        self
    }

    /// 4 observations, 32 hidden units, 5 move scores.
    pub fn policy_shape(&self) -> PolicyShape {
        PolicyShape::new(4, 32, MOVES.len())
    }

    pub fn target(&self) -> [i64; 2] {
        TARGET
    }

    /// Deterministic part of a transition: the obstacle takes
    /// `MOVES[obstacle_move]`, then the agent takes `MOVES[agent_move]`.
    pub fn advance(&self, s: &ObstacleRunState, agent_move: usize, obstacle_move: usize) -> ObstacleRunState {
        let obstacle = shift(s.obstacle, MOVES[obstacle_move]);
        let agent = shift(s.agent, MOVES[agent_move]);
        let collisions = s.collisions + u32::from(agent == obstacle);
        ObstacleRunState {
            agent,
            obstacle,
            collisions,
        }
    }
}

impl Environment for ObstacleRun {
    type State = ObstacleRunState;

    fn observation_dim(&self) -> usize {
        4
    }

    fn action_decoder(&self) -> &ActionDecoder {
        &self.decoder
    }

    fn reset<R: Rng + ?Sized>(&self, rng: &mut R) -> ObstacleRunState {
        if let Some(s) = &self.fixed_start {
            return s.clone();
        }
        let mut cell = || rng.gen_range(0..=GRID_MAX);
        ObstacleRunState {
            agent: [cell(), cell()],
            obstacle: [cell(), cell()],
            collisions: 0,
        }
    }

    fn step<R: Rng + ?Sized>(
        &self,
        state: &ObstacleRunState,
        action: &Action,
        rng: &mut R,
    ) -> Result<(ObstacleRunState, f64)> {
        let agent_move = match action {
            Action::Discrete(i) if *i < MOVES.len() => *i,
            other => {
                return Err(Error::Config(format!(
                    "Obstacle Run expects one of {} discrete moves, got {other:?}",
                    MOVES.len()
                )))
            }
        };
        let obstacle_move = rng.gen_range(0..MOVES.len());
        Ok((self.advance(state, agent_move, obstacle_move), -1.0))
    }

    fn observe(&self, s: &ObstacleRunState, out: &mut [f64]) {
        out[0] = s.agent[0] as f64;
        out[1] = s.agent[1] as f64;
        out[2] = s.obstacle[0] as f64;
        out[3] = s.obstacle[1] as f64;
    }

    fn is_terminal(&self, s: &ObstacleRunState) -> bool {
        s.agent == TARGET
    }

    fn labeling(&self) -> &Labeling<ObstacleRunState> {
        &self.labeling
    }
}

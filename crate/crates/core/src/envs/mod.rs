//! Benchmark environments.
//!
//! * [`ParticleDance`]: continuous tracking of a randomly accelerating
//!   particle under a collision budget.
//! * [`ObstacleRun`]: a 5x5 grid walk to the origin past a randomly moving
//!   obstacle.
//! * [`BernoulliToy`]: a one-step environment whose single transition is safe
//!   with a fixed probability, handy for checking verifiers.

mod obstacle_run;
mod particle_dance;
mod toy;

pub use obstacle_run::{ObstacleRun, ObstacleRunState, GRID_MAX, MOVES};
pub use particle_dance::{Metric, ParticleDance, ParticleDanceState};
pub use toy::{BernoulliToy, ToyState};

/// Requirement shipped with Particle Dance.
pub const PARTICLE_DANCE_REQUIREMENT: &str = "P[>=0.85](G (collision_free | within_budget)) with C[>=0.98]";

/// Requirement shipped with Obstacle Run.
pub const OBSTACLE_RUN_REQUIREMENT: &str = "P[>=0.9](G (off_target | within_budget)) with C[>=0.98]";

/// Episode length used by both benchmarks.
pub const DEFAULT_HORIZON: usize = 50;

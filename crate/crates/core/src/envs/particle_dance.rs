use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cmdp::{Action, Environment};
use crate::error::{Error, Result};
use crate::pctl::Labeling;
use crate::policy::{ActionDecoder, PolicyShape};

pub const POSITION_BOUND: f64 = 2.0;
pub const VELOCITY_BOUND: f64 = 0.1;
pub const ACCEL_BOUND: f64 = 0.1;

/// Distance between agent and particle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn distance(self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let (dx, dy) = ((a[0] - b[0]).abs(), (a[1] - b[1]).abs());
        match self {
            Metric::Euclidean => dx.hypot(dy),
            Metric::Manhattan => dx + dy,
            Metric::Chebyshev => dx.max(dy),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleDanceState {
    pub x_agent: [f64; 2],
    pub x_particle: [f64; 2],
    pub v_agent: [f64; 2],
    pub v_particle: [f64; 2],
    pub collisions: u32,
}

#[derive(Debug)]
pub struct ParticleDance {
    pub d_min: f64,
    pub n_max: u32,
    pub metric: Metric,
    decoder: ActionDecoder,
    labeling: Labeling<ParticleDanceState>,
}

impl Default for ParticleDance {
    fn default() -> Self {
        ParticleDance::new(0.1, 4, Metric::Euclidean)
    }
}

fn clip2(v: [f64; 2], bound: f64) -> [f64; 2] {
    [v[0].clamp(-bound, bound), v[1].clamp(-bound, bound)]
}

fn add2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

impl ParticleDance {
    pub fn new(d_min: f64, n_max: u32, metric: Metric) -> Self {
        let labeling = Labeling::new()
            .with("collision_free", move |s: &ParticleDanceState| {
                metric.distance(s.x_agent, s.x_particle) >= d_min
            })
            .with("within_budget", move |s: &ParticleDanceState| s.collisions <= n_max);
        ParticleDance {
            d_min,
            n_max,
            metric,
            decoder: ActionDecoder::ContinuousBox {
                scale: vec![ACCEL_BOUND; 2],
            },
            labeling,
        }
    }

    /// 8 observations, 32 hidden units, 2 accelerations.
    pub fn policy_shape(&self) -> PolicyShape {
        PolicyShape::new(8, 32, 2)
    }

    pub fn distance(&self, s: &ParticleDanceState) -> f64 {
        self.metric.distance(s.x_agent, s.x_particle)
    }

    /// Deterministic part of a transition given the particle's random
    /// acceleration `noise`.
    pub fn advance(&self, s: &ParticleDanceState, accel: [f64; 2], noise: [f64; 2]) -> ParticleDanceState {
        let v_particle = clip2(add2(s.v_particle, noise), VELOCITY_BOUND);
        let x_particle = clip2(add2(s.x_particle, v_particle), POSITION_BOUND);
        let v_agent = clip2(add2(s.v_agent, accel), VELOCITY_BOUND);
        let x_agent = clip2(add2(s.x_agent, v_agent), POSITION_BOUND);
        let mut next = ParticleDanceState {
            x_agent,
            x_particle,
            v_agent,
            v_particle,
            collisions: s.collisions,
        };
        if self.distance(&next) < self.d_min {
            next.collisions += 1;
        }
        next
    }
}

impl Environment for ParticleDance {
    type State = ParticleDanceState;

    fn observation_dim(&self) -> usize {
        8
    }

    fn action_decoder(&self) -> &ActionDecoder {
        &self.decoder
    }

    fn reset<R: Rng + ?Sized>(&self, rng: &mut R) -> ParticleDanceState {
        let mut u = || rng.gen_range(-1.0..=1.0);
        ParticleDanceState {
            x_agent: [u(), u()],
            x_particle: [u(), u()],
            v_agent: [0.0; 2],
            v_particle: [0.0; 2],
            collisions: 0,
        }
    }

    fn step<R: Rng + ?Sized>(
        &self,
        state: &ParticleDanceState,
        action: &Action,
        rng: &mut R,
    ) -> Result<(ParticleDanceState, f64)> {
        let accel = match action {
            Action::Continuous(a) if a.len() == 2 => [a[0], a[1]],
            other => {
                return Err(Error::Config(format!(
                    "Particle Dance expects a 2-dimensional continuous action, got {other:?}"
                )))
            }
        };
        let noise = [
            rng.gen_range(-VELOCITY_BOUND..=VELOCITY_BOUND),
            rng.gen_range(-VELOCITY_BOUND..=VELOCITY_BOUND),
        ];
        let next = self.advance(state, accel, noise);
        let reward = -self.distance(&next);
        Ok((next, reward))
    }

    fn observe(&self, s: &ParticleDanceState, out: &mut [f64]) {
        out[..2].copy_from_slice(&s.x_agent);
        out[2..4].copy_from_slice(&s.x_particle);
        out[4..6].copy_from_slice(&s.v_agent);
        out[6..8].copy_from_slice(&s.v_particle);
    }

    fn labeling(&self) -> &Labeling<ParticleDanceState> {
        &self.labeling
    }
}

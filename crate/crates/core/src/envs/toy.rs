use rand::Rng;

use crate::cmdp::{Action, Environment, Horizon};
use crate::error::Result;
use crate::pctl::Labeling;
use crate::policy::{ActionDecoder, PolicyShape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToyState {
    pub done: bool,
    pub safe: bool,
}

/// Starts safe and takes one transition whose post-state is labelled
/// `safe` with probability `p_safe`, so `G safe` holds with that
/// probability regardless of the policy.
#[derive(Debug)]
pub struct BernoulliToy {
    pub p_safe: f64,
    decoder: ActionDecoder,
    labeling: Labeling<ToyState>,
}

impl BernoulliToy {
    pub fn new(p_safe: f64) -> Self {
        assert!((0.0..=1.0).contains(&p_safe), "p_safe must be a probability");
        BernoulliToy {
            p_safe,
            decoder: ActionDecoder::DiscreteArgmax { arity: 1 },
            labeling: Labeling::new().with("safe", |s: &ToyState| s.safe),
        }
    }

    pub fn policy_shape(&self) -> PolicyShape {
        PolicyShape::new(1, 2, 1)
    }

    pub fn horizon(&self) -> Horizon {
        Horizon::new(2).expect("2 is a valid horizon")
    }
}

impl Environment for BernoulliToy {
    type State = ToyState;

    fn observation_dim(&self) -> usize {
        1
    }

    fn action_decoder(&self) -> &ActionDecoder {
        &self.decoder
    }

    fn reset<R: Rng + ?Sized>(&self, _rng: &mut R) -> ToyState {
        ToyState {
            done: false,
            safe: true,
        }
    }

    fn step<R: Rng + ?Sized>(&self, _state: &ToyState, _action: &Action, rng: &mut R) -> Result<(ToyState, f64)> {
        let safe = rng.gen_bool(self.p_safe);
        Ok((ToyState { done: true, safe }, f64::from(u8::from(safe))))
    }

    fn observe(&self, _state: &ToyState, out: &mut [f64]) {
        out[0] = 0.0;
    }

    fn is_terminal(&self, s: &ToyState) -> bool {
        s.done
    }

    fn labeling(&self) -> &Labeling<ToyState> {
        &self.labeling
    }
}

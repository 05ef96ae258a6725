//! Bounded PCTL over finite episodes.
//!
//! A [`Requirement`] pairs a single-modality [`PathFormula`] with a required
//! satisfaction probability and a required verification confidence. Path
//! formulas are interpreted over the realized episode: an episode with `L`
//! transitions has states `s_0..=s_L`, unbounded `U` and `G` are bounded by
//! `L`, and a bounded-until bound larger than `L` is clamped to `L`.
//!
//! Every path formula also has a cumulative cost ([`cumulative_cost`]) that is
//! zero exactly when the episode satisfies it.

mod ast;
mod cost;
mod labeling;
mod parse;
mod semantics;

pub use ast::{PathFormula, Requirement, StateFormula};
pub use cost::{annotate_costs, cumulative_cost, cumulative_cost_with, initial_cost, step_cost, CostFunction};
pub use labeling::Labeling;
pub use parse::{parse_path, parse_requirement, parse_state};
pub use semantics::{eval_state, satisfies};

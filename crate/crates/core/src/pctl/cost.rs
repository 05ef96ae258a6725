//! Cost functions derived from state formulas and cumulative episode costs.
//!
//! The step cost `C_f(s, a, s')` is zero when the post state satisfies `f`
//! and a positive penalty otherwise; `c_f(s)` is the 0/1 cost of an initial
//! state. Cumulative costs follow the recursive definitions per modality and
//! vanish exactly on satisfying episodes.

use super::ast::{PathFormula, StateFormula};
use super::labeling::Labeling;
use super::semantics::eval_state;
use crate::cmdp::{Action, Episode};
use crate::error::{Error, Result};

type Severity<S> = Box<dyn Fn(&S) -> f64 + Send + Sync>;

/// Penalty model for violations in post states. The default is a unit
/// penalty; a severity hook replaces it with a positive function of the
/// violating state.
pub struct CostFunction<S> {
    severity: Option<Severity<S>>,
}

impl<S> Default for CostFunction<S> {
    fn default() -> Self {
        CostFunction { severity: None }
    }
}

impl<S> CostFunction<S> {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Installs `h`, which must return a positive value for every state it is
    /// applied to; a non-positive severity is reported as a domain error.
    pub fn with_severity(h: impl Fn(&S) -> f64 + Send + Sync + 'static) -> Self {
        CostFunction {
            severity: Some(Box::new(h)),
        }
    }

    fn penalty(&self, s: &S) -> Result<f64> {
        match &self.severity {
            None => Ok(1.0),
            Some(h) => {
                let v = h(s);
                if v > 0.0 && v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Domain(format!(
                        "severity hook returned {v}; it must be positive"
                    )))
                }
            }
        }
    }

    /// `C_f(s, a, s')`.
    pub fn step(&self, f: &StateFormula, _pre: &S, _action: &Action, post: &S, lab: &Labeling<S>) -> Result<f64> {
        if eval_state(f, post, lab)? {
            Ok(0.0)
        } else {
            self.penalty(post)
        }
    }
}

/// Unit-penalty step cost `C_f(s, a, s')`.
pub fn step_cost<S>(f: &StateFormula, pre: &S, action: &Action, post: &S, lab: &Labeling<S>) -> Result<f64> {
    CostFunction::unit().step(f, pre, action, post, lab)
}

/// `c_f(s)`: 0 if `s |= f`, else 1.
pub fn initial_cost<S>(f: &StateFormula, s: &S, lab: &Labeling<S>) -> Result<f64> {
    Ok(if eval_state(f, s, lab)? { 0.0 } else { 1.0 })
}

pub fn cumulative_cost<S: Clone>(e: &Episode<S>, phi: &PathFormula, lab: &Labeling<S>) -> Result<f64> {
    cumulative_cost_with(e, phi, lab, &CostFunction::unit())
}

pub fn cumulative_cost_with<S: Clone>(
    e: &Episode<S>,
    phi: &PathFormula,
    lab: &Labeling<S>,
    cost: &CostFunction<S>,
) -> Result<f64> {
    lab.check(phi.atoms())?;
    let len = e.len();
    let step = |f: &StateFormula, i: usize| {
        let t = &e.transitions[i];
        cost.step(f, &t.pre_state, &t.action, &t.post_state, lab)
    };
    match phi {
        PathFormula::Always(f) => {
            let mut total = initial_cost(f, &e.initial_state, lab)?;
            for i in 0..len {
                total += step(f, i)?;
            }
            Ok(total)
        }
        PathFormula::Next(f) => {
            if len == 0 {
                return Err(Error::Formula(
                    "next-state formula on an episode without transitions".into(),
                ));
            }
            step(f, 0)
        }
        PathFormula::Until(a, b) => until_cost(e, a, b, len, lab, &step),
        PathFormula::BoundedUntil(a, b, m) => until_cost(e, a, b, (*m).min(len), lab, &step),
        PathFormula::Eventually(b) => until_cost(e, &StateFormula::True, b, len, lab, &step),
    }
}

// C = c_b(s_0) * (c_a(s_0) + C'_m), C'_0 = 1,
// C'_k = C_b(step) * (C_a(step) + C'_{k-1}) along the path; unrolled backwards.
fn until_cost<S: Clone>(
    e: &Episode<S>,
    a: &StateFormula,
    b: &StateFormula,
    bound: usize,
    lab: &Labeling<S>,
    step: &dyn Fn(&StateFormula, usize) -> Result<f64>,
) -> Result<f64> {
    let mut tail = 1.0;
    for i in (0..bound).rev() {
        tail = step(b, i)? * (step(a, i)? + tail);
    }
    let s0 = &e.initial_state;
    Ok(initial_cost(b, s0, lab)? * (initial_cost(a, s0, lab)? + tail))
}

/// Fills `initial_cost` and every transition's `cost` with `c_f` and `C_f`.
pub fn annotate_costs<S: Clone>(
    e: &mut Episode<S>,
    f: &StateFormula,
    lab: &Labeling<S>,
    cost: &CostFunction<S>,
) -> Result<()> {
    e.initial_cost = initial_cost(f, &e.initial_state, lab)?;
    for t in &mut e.transitions {
        t.cost = cost.step(f, &t.pre_state, &t.action, &t.post_state, lab)?;
    }
    Ok(())
}

use super::ast::{PathFormula, StateFormula};
use super::labeling::Labeling;
use crate::cmdp::Episode;
use crate::error::{Error, Result};

/// Propositional satisfaction `s |= f`.
pub fn eval_state<S>(f: &StateFormula, s: &S, lab: &Labeling<S>) -> Result<bool> {
    Ok(match f {
        StateFormula::True => true,
        StateFormula::Atom(a) => lab.eval(a, s)?,
        StateFormula::And(a, b) => eval_state(a, s, lab)? && eval_state(b, s, lab)?,
        StateFormula::Not(a) => !eval_state(a, s, lab)?,
    })
}

/// Finite-episode satisfaction `e |=_{<=L} phi` where `L` is the realized
/// episode length.
pub fn satisfies<S: Clone>(e: &Episode<S>, phi: &PathFormula, lab: &Labeling<S>) -> Result<bool> {
    lab.check(phi.atoms())?;
    let len = e.len();
    match phi {
        PathFormula::Next(f) => {
            if len == 0 {
                return Err(Error::Formula(
                    "next-state formula on an episode without transitions".into(),
                ));
            }
            eval_state(f, e.state(1), lab)
        }
        PathFormula::Always(f) => {
            for s in e.states() {
                if !eval_state(f, s, lab)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PathFormula::Until(a, b) => until(e, a, b, len, lab),
        PathFormula::BoundedUntil(a, b, m) => until(e, a, b, (*m).min(len), lab),
        PathFormula::Eventually(b) => until(e, &StateFormula::True, b, len, lab),
    }
}

// exists j <= bound: s_j |= b and s_k |= a for all k < j
fn until<S: Clone>(
    e: &Episode<S>,
    a: &StateFormula,
    b: &StateFormula,
    bound: usize,
    lab: &Labeling<S>,
) -> Result<bool> {
    for j in 0..=bound {
        let s = e.state(j);
        if eval_state(b, s, lab)? {
            return Ok(true);
        }
        if !eval_state(a, s, lab)? {
            return Ok(false);
        }
    }
    Ok(false)
}

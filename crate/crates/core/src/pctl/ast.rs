use std::fmt;

use crate::error::{Error, Result};

/// Propositional state formula. Disjunction is the derived form
/// `!(!a & !b)`, built by [`StateFormula::or`] and printed back as `a | b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateFormula {
    True,
    Atom(String),
    And(Box<StateFormula>, Box<StateFormula>),
    Not(Box<StateFormula>),
}

impl StateFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        StateFormula::Atom(name.into())
    }

    pub fn and(a: StateFormula, b: StateFormula) -> Self {
        StateFormula::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: StateFormula) -> Self {
        StateFormula::Not(Box::new(a))
    }

    pub fn or(a: StateFormula, b: StateFormula) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    /// Returns the operands if `self` has the derived-disjunction shape.
    pub fn as_or(&self) -> Option<(&StateFormula, &StateFormula)> {
        if let StateFormula::Not(inner) = self {
            if let StateFormula::And(a, b) = inner.as_ref() {
                if let (StateFormula::Not(x), StateFormula::Not(y)) = (a.as_ref(), b.as_ref()) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a StateFormula, out: &mut Vec<&'a str>) {
            match f {
                StateFormula::True => {}
                StateFormula::Atom(a) => {
                    if !out.contains(&a.as_str()) {
                        out.push(a);
                    }
                }
                StateFormula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                StateFormula::Not(a) => walk(a, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    // 0 = or-level, 1 = and-level, 2 = unary/atomic
    fn precedence(&self) -> u8 {
        if self.as_or().is_some() {
            0
        } else if matches!(self, StateFormula::And(..)) {
            1
        } else {
            2
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        if let Some((a, b)) = self.as_or() {
            a.fmt_at(f, 0)?;
            f.write_str(" | ")?;
            // right operand of a left-associative operator needs one level more
            b.fmt_at(f, 1)?;
        } else {
            match self {
                StateFormula::True => f.write_str("true")?,
                StateFormula::Atom(a) => f.write_str(a)?,
                StateFormula::And(a, b) => {
                    a.fmt_at(f, 1)?;
                    f.write_str(" & ")?;
                    b.fmt_at(f, 2)?;
                }
                StateFormula::Not(a) => {
                    f.write_str("!")?;
                    a.fmt_at(f, 2)?;
                }
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Path formula with exactly one temporal modality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathFormula {
    Next(StateFormula),
    Until(StateFormula, StateFormula),
    BoundedUntil(StateFormula, StateFormula, usize),
    Always(StateFormula),
    Eventually(StateFormula),
}

impl PathFormula {
    pub fn atoms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = match self {
            PathFormula::Next(f) | PathFormula::Always(f) | PathFormula::Eventually(f) => f.atoms(),
            PathFormula::Until(a, b) | PathFormula::BoundedUntil(a, b, _) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
        };
        let mut seen = Vec::with_capacity(out.len());
        out.retain(|a| {
            let fresh = !seen.contains(a);
            seen.push(*a);
            fresh
        });
        out
    }
}

impl fmt::Display for PathFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathFormula::Next(a) => write!(f, "X {}", Wrapped(a)),
            PathFormula::Always(a) => write!(f, "G {}", Wrapped(a)),
            PathFormula::Eventually(a) => write!(f, "F {}", Wrapped(a)),
            PathFormula::Until(a, b) => write!(f, "{} U {}", Wrapped(a), Wrapped(b)),
            PathFormula::BoundedUntil(a, b, m) => {
                write!(f, "{} U[<={m}] {}", Wrapped(a), Wrapped(b))
            }
        }
    }
}

/// Parenthesizes binary state formulas under a temporal operator.
struct Wrapped<'a>(&'a StateFormula);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < 2 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// `P[>= p_req](path) with C[>= c_req]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Requirement {
    pub path: PathFormula,
    pub p_req: f64,
    pub c_req: f64,
}

impl Requirement {
    pub fn new(path: PathFormula, p_req: f64, c_req: f64) -> Result<Self> {
        check_open_unit("p_req", p_req)?;
        check_open_unit("c_req", c_req)?;
        Ok(Requirement { path, p_req, c_req })
    }
}

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Range { name, value })
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[>={}]({}) with C[>={}]", self.p_req, self.path, self.c_req)
    }
}

use std::fmt;

use crate::error::{Error, Result};

type Predicate<S> = Box<dyn Fn(&S) -> bool + Send + Sync>;

/// Atom name to state predicate.
pub struct Labeling<S> {
    atoms: Vec<(String, Predicate<S>)>,
}

impl<S> Default for Labeling<S> {
    fn default() -> Self {
        Labeling { atoms: Vec::new() }
    }
}

impl<S> Labeling<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an atom. Panics if the name is already bound.
    pub fn with(mut self, name: &str, predicate: impl Fn(&S) -> bool + Send + Sync + 'static) -> Self {
        assert!(self.get(name).is_none(), "atom `{name}` bound twice");
        self.atoms.push((name.to_owned(), Box::new(predicate)));
        self
    }

    pub fn get(&self, name: &str) -> Option<&(dyn Fn(&S) -> bool + Send + Sync)> {
        self.atoms.iter().find(|(n, _)| n == name).map(|(_, p)| p.as_ref())
    }

    pub fn eval(&self, name: &str, state: &S) -> Result<bool> {
        self.get(name)
            .map(|p| p(state))
            .ok_or_else(|| Error::Formula(format!("unknown atom `{name}`")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(|(n, _)| n.as_str())
    }

    /// Fails on the first atom of `atoms` without a predicate.
    pub fn check<'a>(&self, atoms: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for a in atoms {
            if self.get(a).is_none() {
                return Err(Error::Formula(format!("unknown atom `{a}`")));
            }
        }
        Ok(())
    }
}

impl<S> fmt::Debug for Labeling<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

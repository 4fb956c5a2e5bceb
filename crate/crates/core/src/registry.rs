//! Runtime selection of strategies by name.

use crate::graph::{GraphFamily, Hamming, Hypercube, Torus, TorusHam};
use crate::heuristics::{AnnealLabeler, Labeler, RcmLabeler};
use crate::partition::{AlternatingScheme, EqualBlocksScheme, LiteratureScheme, PartitionScheme};
use crate::sdp::{FullModel, ReducedModel, Relaxation, SlaterModel};
use crate::{Error, Result};

/// Strategies of one kind, looked up by name.
pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, entries: Vec::new() }
    }

    /// Adds a strategy; a later registration under the same name replaces
    /// the earlier one.
    pub fn register(&mut self, name: &'static str, strategy: Box<T>) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, strategy));
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

/// `torus`, `torus-ham`, `hypercube`, `hamming`.
pub fn generators() -> Registry<dyn GraphFamily> {
    let mut r: Registry<dyn GraphFamily> = Registry::new("graph family");
    for family in [Box::new(Torus) as Box<dyn GraphFamily>, Box::new(TorusHam), Box::new(Hypercube), Box::new(Hamming)] {
        r.register(family.name(), family);
    }
    r
}

/// `equal`, `literature`, `alternating`.
pub fn schemes() -> Registry<dyn PartitionScheme> {
    let mut r: Registry<dyn PartitionScheme> = Registry::new("partition scheme");
    for scheme in [
        Box::new(EqualBlocksScheme) as Box<dyn PartitionScheme>,
        Box::new(LiteratureScheme),
        Box::new(AlternatingScheme),
    ] {
        r.register(scheme.name(), scheme);
    }
    r
}

/// `full`, `reduced`, `slater`.
pub fn relaxations() -> Registry<dyn Relaxation> {
    let mut r: Registry<dyn Relaxation> = Registry::new("relaxation");
    for model in [Box::new(FullModel) as Box<dyn Relaxation>, Box::new(ReducedModel), Box::new(SlaterModel)] {
        r.register(model.name(), model);
    }
    r
}

/// `rcm`, `anneal`.
pub fn labelers() -> Registry<dyn Labeler> {
    let mut r: Registry<dyn Labeler> = Registry::new("labeler");
    for labeler in [Box::new(RcmLabeler) as Box<dyn Labeler>, Box::new(AnnealLabeler)] {
        r.register(labeler.name(), labeler);
    }
    r
}

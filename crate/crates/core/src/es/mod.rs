//! Finite event structures with polarities, their configurations, maps,
//! parallel composition, projection and isomorphism search.
//!
//! Events are addressed by dense indices; string ids are kept for I/O.
//! Causality is stored as its transitive reduction together with the cached
//! down-closures `[e]`. Consistency is stored as conflict generators: a set is
//! consistent iff no generator is contained in its down-closure. Generators are
//! kept canonical, as the maximal events of the minimal inconsistent
//! down-closed sets, so a minimal conflict `a ~ b` is stored as `{a, b}`.

pub(crate) mod config;
mod iso;
mod maps;
mod ops;
mod strategy;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::set::EventSet;

pub use config::{Configurations, Covering};
pub use iso::{find_isomorphism, find_isomorphisms, IsoQuery};
pub use maps::{check_hiding_map, check_map, compose_maps, EsMap, HidingCheck, MapVerdict};
pub use ops::{parallel, parallel_esp, parallel_tagged, project, project_esp, Projection};
pub use strategy::{game_translation, PreStrategy, Side, Split};
pub use validate::{validate_es, RawStructure, ValidationReport, Violation};

/// A configuration, as a set of indices into its home structure.
pub type Configuration = EventSet;

/// Event identifier: non-empty and free of whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventId(String);

impl EventId {
    pub fn new(s: impl Into<String>) -> Result<Self> {
        let s = s.into();
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidId(s));
        }
        Ok(Self(s))
    }

    #[must_use]
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `prefix.id`, used by the tagged constructions.
    #[must_use]
    pub fn prefixed(&self, prefix: &str) -> Self {
        Self(format!("{prefix}.{}", self.0))
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Deref for EventId {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Neg,
    Pos,
}

impl Polarity {
    #[must_use]
    pub fn flip(self) -> Self {
        match self {
            Polarity::Neg => Polarity::Pos,
            Polarity::Pos => Polarity::Neg,
        }
    }

    #[must_use]
    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Neg => "-",
            Polarity::Pos => "+",
        }
    }
}

impl std::str::FromStr for Polarity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Polarity::Pos),
            "-" | "\u{2212}" => Ok(Polarity::Neg),
            other => Err(Error::Precondition(format!("unknown polarity `{other}`"))),
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A finite event structure.
#[derive(Clone)]
pub struct EventStructure {
    ids: Vec<EventId>,
    index: HashMap<EventId, usize>,
    /// Immediate causes of each event.
    imm: Vec<EventSet>,
    /// `[e]`, including `e`.
    down: Vec<EventSet>,
    /// Canonical generators, sorted.
    gens: Vec<EventSet>,
    /// Generators containing each event, as indices into `gens`.
    gens_of: Vec<Vec<usize>>,
}

impl EventStructure {
    #[must_use]
    pub fn empty() -> Self {
        Self::build_unchecked(Vec::new(), Vec::new(), Vec::new())
    }

    /// Build from ids, causal edges `(cause, effect)` and inconsistent sets,
    /// all given by index. Edges need not be transitively reduced and the
    /// inconsistent sets need not be canonical.
    pub fn build(
        ids: Vec<EventId>,
        edges: &[(usize, usize)],
        conflicts: &[EventSet],
    ) -> Result<Self> {
        let report = validate::validate_indexed(&ids, edges, conflicts);
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        let n = ids.len();
        let mut preds = vec![EventSet::new(); n];
        for &(a, b) in edges {
            preds[b].insert(a);
        }
        let down = validate::down_closures(&preds).expect("acyclic after validation");
        Ok(Self::from_down(ids, down, conflicts))
    }

    /// Build from down-closures (each `down[e]` contains `e`) and arbitrary
    /// inconsistent sets. The caller guarantees acyclicity and axiom 2.
    pub(crate) fn from_down(
        ids: Vec<EventId>,
        down: Vec<EventSet>,
        conflicts: &[EventSet],
    ) -> Self {
        let n = ids.len();
        let strict: Vec<EventSet> = (0..n).map(|e| down[e].without(e)).collect();
        let imm: Vec<EventSet> = (0..n)
            .map(|e| {
                let mut covered = EventSet::new();
                for d in strict[e].iter() {
                    covered.union_with(&strict[d]);
                }
                strict[e].difference(&covered)
            })
            .collect();
        let gens = canonical_generators(&down, conflicts);
        Self::assemble(ids, imm, down, gens)
    }

    fn build_unchecked(ids: Vec<EventId>, imm: Vec<EventSet>, down: Vec<EventSet>) -> Self {
        Self::assemble(ids, imm, down, Vec::new())
    }

    fn assemble(
        ids: Vec<EventId>,
        imm: Vec<EventSet>,
        down: Vec<EventSet>,
        gens: Vec<EventSet>,
    ) -> Self {
        let index = ids
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        let mut gens_of = vec![Vec::new(); ids.len()];
        for (k, g) in gens.iter().enumerate() {
            for e in g.iter() {
                gens_of[e].push(k);
            }
        }
        Self {
            ids,
            index,
            imm,
            down,
            gens,
            gens_of,
        }
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[must_use]
    pub fn ids(&self) -> &[EventId] {
        &self.ids
    }

    #[must_use]
    pub fn id(&self, e: usize) -> &EventId {
        &self.ids[e]
    }

    #[must_use]
    pub fn index_of(&self, id: &str) -> Option<usize> {
        // EventId hashes like its string.
        self.index.get(&EventId(id.to_owned())).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownEvent(id.to_owned()))
    }

    pub fn lookup_set<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<EventSet> {
        ids.into_iter().map(|id| self.lookup(id)).collect()
    }

    #[must_use]
    pub fn events(&self) -> EventSet {
        EventSet::full(self.len())
    }

    /// Immediate causes of `e`.
    #[must_use]
    pub fn immediate_causes(&self, e: usize) -> &EventSet {
        &self.imm[e]
    }

    /// All `(a, b)` with `a ⇢ b`, sorted by index.
    #[must_use]
    pub fn immediate_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|b| self.imm[b].iter().map(move |a| (a, b)))
            .collect::<Vec<_>>()
    }

    #[must_use]
    pub fn is_immediate(&self, a: usize, b: usize) -> bool {
        self.imm[b].contains(a)
    }

    /// `[e]`.
    #[must_use]
    pub fn below(&self, e: usize) -> &EventSet {
        &self.down[e]
    }

    #[must_use]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    #[must_use]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.down[b].contains(a)
    }

    #[must_use]
    pub fn generators(&self) -> &[EventSet] {
        &self.gens
    }

    /// Length of the longest causal chain ending at `e`.
    #[must_use]
    pub fn depth(&self, e: usize) -> usize {
        self.imm[e]
            .iter()
            .map(|d| self.depth(d) + 1)
            .max()
            .unwrap_or(0)
    }

    /// `[X]`.
    #[must_use]
    pub fn down_closure(&self, x: &EventSet) -> EventSet {
        let mut out = EventSet::new();
        for e in x.iter() {
            out.union_with(&self.down[e]);
        }
        out
    }

    #[must_use]
    pub fn is_down_closed(&self, x: &EventSet) -> bool {
        x.iter().all(|e| self.imm[e].is_subset(x))
    }

    #[must_use]
    pub fn is_consistent(&self, x: &EventSet) -> bool {
        let dc = self.down_closure(x);
        !self.gens.iter().any(|g| g.is_subset(&dc))
    }

    #[must_use]
    pub fn is_configuration(&self, x: &EventSet) -> bool {
        x.iter().all(|e| e < self.len()) && self.is_down_closed(x) && self.is_consistent(x)
    }

    /// Whether `x ∪ {e}` is a configuration, for a configuration `x`.
    #[must_use]
    pub fn extends(&self, x: &EventSet, e: usize) -> bool {
        if x.contains(e) || !self.imm[e].is_subset(x) {
            return false;
        }
        let y = x.with(e);
        self.gens_of[e].iter().all(|&k| !self.gens[k].is_subset(&y))
    }

    /// Events `e` with `x —⊂e`.
    pub fn enabled<'a>(&'a self, x: &'a EventSet) -> impl Iterator<Item = usize> + 'a {
        (0..self.len()).filter(move |&e| self.extends(x, e))
    }

    /// Maximal events of `x` under causality.
    #[must_use]
    pub fn maximal(&self, x: &EventSet) -> EventSet {
        let mut covered = EventSet::new();
        for e in x.iter() {
            covered.union_with(&self.down[e].without(e));
        }
        x.difference(&covered)
    }

    #[must_use]
    pub fn ids_of(&self, x: &EventSet) -> Vec<&str> {
        let mut v: Vec<&str> = x.iter().map(|e| self.ids[e].as_str()).collect();
        v.sort_unstable();
        v
    }

    /// `{a,b,..}` with ids sorted, for diagnostics.
    #[must_use]
    pub fn show(&self, x: &EventSet) -> String {
        format!("{{{}}}", self.ids_of(x).join(","))
    }

    /// Same events, order and consistency, under new ids.
    pub fn renamed(&self, ids: Vec<EventId>) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::Mismatch("rename needs one id per event".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = ids.iter().find(|id| !seen.insert(*id)) {
            return Err(Error::Mismatch(format!("duplicate id `{dup}`")));
        }
        Ok(Self::assemble(
            ids,
            self.imm.clone(),
            self.down.clone(),
            self.gens.clone(),
        ))
    }

    /// Canonical description by ids: sorted events, edges and generators.
    #[must_use]
    pub fn canonical(&self) -> CanonicalForm {
        let mut events: Vec<String> = self.ids.iter().map(|i| i.0.clone()).collect();
        events.sort();
        let mut prec: Vec<(String, String)> = self
            .immediate_edges()
            .into_iter()
            .map(|(a, b)| (self.ids[a].0.clone(), self.ids[b].0.clone()))
            .collect();
        prec.sort();
        let mut conflicts: Vec<Vec<String>> = self
            .gens
            .iter()
            .map(|g| self.ids_of(g).into_iter().map(str::to_owned).collect())
            .collect();
        conflicts.sort();
        CanonicalForm {
            events,
            prec,
            conflicts,
        }
    }
}

/// Id-level canonical form used for structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub events: Vec<String>,
    pub prec: Vec<(String, String)>,
    pub conflicts: Vec<Vec<String>>,
}

impl PartialEq for EventStructure {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for EventStructure {}

impl fmt::Debug for EventStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        f.debug_struct("EventStructure")
            .field("events", &c.events)
            .field("prec", &c.prec)
            .field("conflicts", &c.conflicts)
            .finish()
    }
}

/// Replace each inconsistent set by the maximal events of its down-closure
/// and keep only the inclusion-minimal down-closures.
fn canonical_generators(down: &[EventSet], conflicts: &[EventSet]) -> Vec<EventSet> {
    let close = |x: &EventSet| {
        let mut out = EventSet::new();
        for e in x.iter() {
            out.union_with(&down[e]);
        }
        out
    };
    let mut closed: Vec<EventSet> = conflicts.iter().map(close).collect();
    closed.sort();
    closed.dedup();
    let minimal: Vec<&EventSet> = closed
        .iter()
        .filter(|y| !closed.iter().any(|z| z != *y && z.is_subset(y)))
        .collect();
    let mut gens: Vec<EventSet> = minimal
        .into_iter()
        .map(|y| {
            let mut covered = EventSet::new();
            for e in y.iter() {
                covered.union_with(&down[e].without(e));
            }
            y.difference(&covered)
        })
        .collect();
    gens.sort();
    gens
}

/// An event structure with a polarity on every event.
#[derive(Clone)]
pub struct Esp {
    structure: EventStructure,
    polarity: Vec<Polarity>,
}

impl Esp {
    pub fn new(structure: EventStructure, polarity: Vec<Polarity>) -> Result<Self> {
        if polarity.len() != structure.len() {
            return Err(Error::Mismatch("polarity must cover every event".into()));
        }
        Ok(Self {
            structure,
            polarity,
        })
    }

    #[must_use]
    pub fn empty() -> Self {
        Self {
            structure: EventStructure::empty(),
            polarity: Vec::new(),
        }
    }

    #[must_use]
    pub fn structure(&self) -> &EventStructure {
        &self.structure
    }

    #[must_use]
    pub fn into_structure(self) -> EventStructure {
        self.structure
    }

    #[must_use]
    pub fn polarity(&self, e: usize) -> Polarity {
        self.polarity[e]
    }

    #[must_use]
    pub fn polarities(&self) -> &[Polarity] {
        &self.polarity
    }

    #[must_use]
    pub fn is_negative(&self, e: usize) -> bool {
        self.polarity[e] == Polarity::Neg
    }

    #[must_use]
    pub fn is_positive(&self, e: usize) -> bool {
        self.polarity[e] == Polarity::Pos
    }

    /// Events of `x` with polarity `p`.
    #[must_use]
    pub fn with_polarity(&self, x: &EventSet, p: Polarity) -> EventSet {
        x.iter().filter(|&e| self.polarity[e] == p).collect()
    }

    /// Same structure, polarities flipped.
    #[must_use]
    pub fn dual(&self) -> Self {
        Self {
            structure: self.structure.clone(),
            polarity: self.polarity.iter().map(|p| p.flip()).collect(),
        }
    }

    pub fn renamed(&self, ids: Vec<EventId>) -> Result<Self> {
        Ok(Self {
            structure: self.structure.renamed(ids)?,
            polarity: self.polarity.clone(),
        })
    }

    /// Canonical form with polarities attached to event ids.
    #[must_use]
    pub fn canonical_polarities(&self) -> Vec<(String, Polarity)> {
        let mut v: Vec<(String, Polarity)> = (0..self.len())
            .map(|e| (self.id(e).to_string(), self.polarity[e]))
            .collect();
        v.sort();
        v
    }
}

impl PartialEq for Esp {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
            && self.canonical_polarities() == other.canonical_polarities()
    }
}

impl Eq for Esp {}

impl Deref for Esp {
    type Target = EventStructure;
    fn deref(&self) -> &EventStructure {
        &self.structure
    }
}

impl fmt::Debug for Esp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.structure.canonical();
        let pol: Vec<String> = self
            .canonical_polarities()
            .into_iter()
            .map(|(id, p)| format!("{id}{p}"))
            .collect();
        f.debug_struct("Esp")
            .field("events", &pol)
            .field("prec", &c.prec)
            .field("conflicts", &c.conflicts)
            .finish()
    }
}

/// Parse a list of string ids.
pub fn ids<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Vec<EventId>> {
    names.into_iter().map(EventId::new).collect()
}

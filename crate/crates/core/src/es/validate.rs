use std::collections::{BTreeSet, HashMap};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{EventId, EventStructure};
use crate::error::{Error, Result};
use crate::set::EventSet;

/// Unvalidated, id-level description of an event structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawStructure {
    pub events: Vec<String>,
    pub prec: Vec<(String, String)>,
    pub conflicts: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    DuplicateId(String),
    InvalidId(String),
    UnknownEvent(String),
    CausalCycle(Vec<String>),
    GeneratorTooSmall(Vec<String>),
    GeneratorBelowEvent {
        generator: Vec<String>,
        event: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate id {id}"),
            Violation::InvalidId(id) => write!(f, "invalid id `{id}`"),
            Violation::UnknownEvent(id) => write!(f, "unknown event {id}"),
            Violation::CausalCycle(c) => write!(f, "causal cycle {{{}}}", c.join(",")),
            Violation::GeneratorTooSmall(g) => {
                write!(f, "generator {{{}}} has fewer than 2 events", g.join(","))
            }
            Violation::GeneratorBelowEvent { generator, event } => {
                write!(
                    f,
                    "generator {{{}}} lies below {event}",
                    generator.join(",")
                )
            }
        }
    }
}

/// Violated axioms; empty when the input is a valid event structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// Rendered violations, one per entry.
    #[must_use]
    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.messages().join("; "))
    }
}

/// Check a raw description against the event structure axioms.
#[must_use]
pub fn validate_es(raw: &RawStructure) -> ValidationReport {
    match resolve(raw) {
        Ok((ids, edges, conflicts)) => validate_indexed(&ids, &edges, &conflicts),
        Err(report) => report,
    }
}

type Resolved = (Vec<EventId>, Vec<(usize, usize)>, Vec<EventSet>);

fn resolve(raw: &RawStructure) -> std::result::Result<Resolved, ValidationReport> {
    let mut violations = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut ids = Vec::new();
    for name in &raw.events {
        match EventId::new(name.as_str()) {
            Ok(id) => {
                if index.insert(name.as_str(), ids.len()).is_some() {
                    violations.push(Violation::DuplicateId(name.clone()));
                } else {
                    ids.push(id);
                }
            }
            Err(_) => violations.push(Violation::InvalidId(name.clone())),
        }
    }
    let look = |name: &String, violations: &mut Vec<Violation>| {
        let found = index.get(name.as_str()).copied();
        if found.is_none() {
            violations.push(Violation::UnknownEvent(name.clone()));
        }
        found
    };
    let mut edges = Vec::new();
    for (a, b) in &raw.prec {
        if let (Some(x), Some(y)) = (look(a, &mut violations), look(b, &mut violations)) {
            edges.push((x, y));
        }
    }
    let mut conflicts = Vec::new();
    for g in &raw.conflicts {
        let idx: Vec<Option<usize>> = g.iter().map(|n| look(n, &mut violations)).collect();
        if idx.iter().all(Option::is_some) {
            let set: EventSet = idx.into_iter().flatten().collect();
            if set.len() < 2 {
                let mut names = g.clone();
                names.sort();
                names.dedup();
                violations.push(Violation::GeneratorTooSmall(names));
            } else {
                conflicts.push(set);
            }
        }
    }
    if violations.is_empty() {
        Ok((ids, edges, conflicts))
    } else {
        violations.sort();
        violations.dedup();
        Err(ValidationReport { violations })
    }
}

pub(crate) fn validate_indexed(
    ids: &[EventId],
    edges: &[(usize, usize)],
    conflicts: &[EventSet],
) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            violations.push(Violation::DuplicateId(id.to_string()));
        }
    }
    let n = ids.len();
    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for &(a, b) in edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    for scc in tarjan_scc(&graph) {
        let cyclic = scc.len() > 1 || edges.iter().any(|&(a, b)| a == b && nodes[a] == scc[0]);
        if cyclic {
            let mut names: Vec<String> = scc.iter().map(|v| ids[v.index()].to_string()).collect();
            names.sort();
            violations.push(Violation::CausalCycle(names));
        }
    }
    let name_set = |g: &EventSet| {
        let mut v: Vec<String> = g.iter().map(|e| ids[e].to_string()).collect();
        v.sort();
        v
    };
    for g in conflicts {
        if g.len() < 2 {
            violations.push(Violation::GeneratorTooSmall(name_set(g)));
        }
    }
    if violations.is_empty() {
        let mut preds = vec![EventSet::new(); n];
        for &(a, b) in edges {
            preds[b].insert(a);
        }
        let down = down_closures(&preds).expect("no cycle");
        for g in conflicts {
            if let Some(e) = (0..n).find(|&e| g.is_subset(&down[e])) {
                violations.push(Violation::GeneratorBelowEvent {
                    generator: name_set(g),
                    event: ids[e].to_string(),
                });
            }
        }
    }
    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

/// `[e]` for every event, or `None` on a cycle.
pub(crate) fn down_closures(preds: &[EventSet]) -> Option<Vec<EventSet>> {
    let n = preds.len();
    let mut down: Vec<Option<EventSet>> = vec![None; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|&e| {
            if preds[e].iter().all(|p| down[p].is_some()) {
                let mut d = EventSet::singleton(e);
                for p in preds[e].iter() {
                    d.union_with(down[p].as_ref().expect("ready"));
                }
                down[e] = Some(d);
                false
            } else {
                true
            }
        });
        if remaining.len() == before {
            return None;
        }
    }
    Some(down.into_iter().map(|d| d.expect("all resolved")).collect())
}

impl EventStructure {
    /// Validate and build from an id-level description.
    pub fn from_raw(raw: &RawStructure) -> Result<Self> {
        let (ids, edges, conflicts) = resolve(raw).map_err(Error::Invalid)?;
        Self::build(ids, &edges, &conflicts)
    }

    /// Convenience constructor from string slices.
    pub fn from_lists(
        events: &[&str],
        prec: &[(&str, &str)],
        conflicts: &[&[&str]],
    ) -> Result<Self> {
        Self::from_raw(&RawStructure {
            events: events.iter().map(|s| (*s).to_owned()).collect(),
            prec: prec
                .iter()
                .map(|(a, b)| ((*a).to_owned(), (*b).to_owned()))
                .collect(),
            conflicts: conflicts
                .iter()
                .map(|g| g.iter().map(|s| (*s).to_owned()).collect())
                .collect(),
        })
    }

    /// Id-level description of this structure, in canonical order.
    #[must_use]
    pub fn to_raw(&self) -> RawStructure {
        let c = self.canonical();
        RawStructure {
            events: c.events,
            prec: c.prec,
            conflicts: c.conflicts,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(events: &[&str], prec: &[(&str, &str)], conflicts: &[&[&str]]) -> RawStructure {
        RawStructure {
            events: events.iter().map(|s| (*s).to_owned()).collect(),
            prec: prec
                .iter()
                .map(|(a, b)| ((*a).to_owned(), (*b).to_owned()))
                .collect(),
            conflicts: conflicts
                .iter()
                .map(|g| g.iter().map(|s| (*s).to_owned()).collect())
                .collect(),
        }
    }

    #[test]
    fn two_cycle_is_reported() {
        let r = validate_es(&raw(&["a", "b"], &[("a", "b"), ("b", "a")], &[]));
        assert!(
            r.messages().contains(&"causal cycle {a,b}".to_owned()),
            "{r}"
        );
    }

    #[test]
    fn vending_machine_is_valid() {
        let r = validate_es(&raw(
            &["coin", "selC", "selT", "coffee", "tea"],
            &[
                ("coin", "coffee"),
                ("coin", "tea"),
                ("selC", "coffee"),
                ("selT", "tea"),
            ],
            &[&["coffee", "tea"]],
        ));
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn three_way_conflict_is_legal() {
        assert!(validate_es(&raw(&["1", "2", "3"], &[], &[&["1", "2", "3"]])).is_empty());
    }

    #[test]
    fn other_violations() {
        let r = validate_es(&raw(&["a", "a", "b"], &[], &[]));
        assert_eq!(r.violations, vec![Violation::DuplicateId("a".into())]);
        let r = validate_es(&raw(&["a", "b"], &[("a", "b")], &[&["a", "b"]]));
        assert!(matches!(
            r.violations[..],
            [Violation::GeneratorBelowEvent { .. }]
        ));
        let r = validate_es(&raw(&["a"], &[], &[&["a"]]));
        assert!(matches!(
            r.violations[..],
            [Violation::GeneratorTooSmall(_)]
        ));
        let r = validate_es(&raw(&["a"], &[("a", "z")], &[]));
        assert_eq!(r.violations, vec![Violation::UnknownEvent("z".into())]);
    }
}

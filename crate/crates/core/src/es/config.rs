//! Configuration enumeration and structures derived from a consistency oracle.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use super::{EventId, EventStructure};
use crate::error::{Error, GuardKind, Result};
use crate::limits::Limits;
use crate::par;
use crate::set::EventSet;

/// A covering step `from —⊂event to`, by configuration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Covering {
    pub from: usize,
    pub event: usize,
    pub to: usize,
}

/// All configurations of a structure, canonically ordered, with coverings.
#[derive(Debug, Clone)]
pub struct Configurations {
    pub configs: Vec<EventSet>,
    pub covers: Vec<Covering>,
    index: HashMap<EventSet, usize>,
}

impl Configurations {
    #[must_use]
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    #[must_use]
    pub fn position(&self, x: &EventSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    #[must_use]
    pub fn contains(&self, x: &EventSet) -> bool {
        self.index.contains_key(x)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EventSet> {
        self.configs.iter()
    }
}

/// Breadth-first enumeration of down-closed sets accepted by `con`, level by
/// level. `down[e]` contains `e`. Each level is sorted, so the result does not
/// depend on scheduling.
pub(crate) fn down_closed_sets<F>(
    down: &[EventSet],
    con: F,
    limits: &Limits,
) -> Result<Vec<EventSet>>
where
    F: Fn(&EventSet) -> bool + Sync + Send,
{
    let n = down.len();
    let strict: Vec<EventSet> = (0..n).map(|e| down[e].without(e)).collect();
    let cap = limits.max_configurations();
    let mut all = vec![EventSet::new()];
    let mut level = vec![EventSet::new()];
    while !level.is_empty() {
        let mut next = par::flat_map(&level, |x| {
            (0..n)
                .filter(|&e| !x.contains(e) && strict[e].is_subset(x))
                .map(|e| x.with(e))
                .filter(|y| con(y))
                .collect::<Vec<_>>()
        });
        next.sort_unstable();
        next.dedup();
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::Guard {
                what: GuardKind::Configurations,
                actual: all.len(),
                limit: cap,
            });
        }
        level = next;
    }
    Ok(all)
}

/// Minimal inconsistent down-closed sets, given the complete set of
/// consistent ones, each reported by its maximal events.
pub(crate) fn minimal_inconsistent(down: &[EventSet], configs: &[EventSet]) -> Vec<EventSet> {
    let n = down.len();
    let strict: Vec<EventSet> = (0..n).map(|e| down[e].without(e)).collect();
    let known: HashSet<&EventSet> = configs.iter().collect();
    let maximal = |y: &EventSet| {
        let mut covered = EventSet::new();
        for e in y.iter() {
            covered.union_with(&strict[e]);
        }
        y.difference(&covered)
    };
    let mut found = par::flat_map(configs, |x| {
        let mut out = Vec::new();
        for (e, below) in strict.iter().enumerate() {
            if x.contains(e) || !below.is_subset(x) {
                continue;
            }
            let y = x.with(e);
            if known.contains(&y) {
                continue;
            }
            let top = maximal(&y);
            if top.iter().all(|m| known.contains(&y.without(m))) {
                out.push(top);
            }
        }
        out
    });
    found.sort_unstable();
    found.dedup();
    found
}

impl EventStructure {
    /// Structure with the given order whose consistent down-closed sets are
    /// exactly those accepted by `con`. `con` must accept `∅` and every `[e]`,
    /// and its rejections must be closed upwards among down-closed sets.
    pub fn derive<F>(ids: Vec<EventId>, down: Vec<EventSet>, con: F) -> Result<Self>
    where
        F: Fn(&EventSet) -> bool + Sync + Send,
    {
        for (e, d) in down.iter().enumerate() {
            if !con(d) {
                return Err(Error::Precondition(format!("[{}] is inconsistent", ids[e])));
            }
        }
        let configs = down_closed_sets(&down, &con, &Limits::current())?;
        let gens = minimal_inconsistent(&down, &configs);
        Ok(Self::from_down(ids, down, &gens))
    }

    /// 𝒞(E), canonically ordered, with covering steps.
    pub fn configurations(&self) -> Result<Configurations> {
        self.configurations_with(&Limits::current())
    }

    pub fn configurations_with(&self, limits: &Limits) -> Result<Configurations> {
        let mut configs = down_closed_sets(&self.down, |y| self.is_consistent_closed(y), limits)?;
        configs.sort_by(|a, b| self.compare_configs(a, b));
        let index: HashMap<EventSet, usize> = configs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let mut covers: Vec<Covering> = par::flat_map(&configs, |x| {
            let from = index[x];
            self.enabled(x)
                .map(|e| Covering {
                    from,
                    event: e,
                    to: index[&x.with(e)],
                })
                .collect::<Vec<_>>()
        });
        covers.sort_unstable();
        Ok(Configurations {
            configs,
            covers,
            index,
        })
    }

    /// Consistency of a set already known to be down-closed.
    pub(crate) fn is_consistent_closed(&self, y: &EventSet) -> bool {
        !self.gens.iter().any(|g| g.is_subset(y))
    }

    /// Canonical order: by size, then by the sorted list of member ids.
    #[must_use]
    pub fn compare_configs(&self, a: &EventSet, b: &EventSet) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| self.ids_of(a).cmp(&self.ids_of(b)))
    }
}

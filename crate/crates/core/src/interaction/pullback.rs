//! Secured bijections and the pullback `S ∧ T` of two total maps.

use std::collections::{HashMap, HashSet};

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;

use crate::error::{Error, GuardKind, Result};
use crate::es::{config::minimal_inconsistent, EsMap, EventId, EventStructure};
use crate::limits::Limits;
use crate::par;
use crate::set::EventSet;

/// Sorted id pairs naming a prime.
type IdPairs = Vec<(String, String)>;

/// Whether the pairs form a secured bijection between configurations of `s`
/// and `t`: the induced relation `(a,b) ◁ (a',b')` iff `a < a'` or `b < b'`
/// has no cycle.
pub fn is_secured(s: &EventStructure, t: &EventStructure, phi: &[(usize, usize)]) -> Result<bool> {
    let (x, y) = sides(s, t, phi)?;
    if !s.is_configuration(&x) || !t.is_configuration(&y) {
        return Err(Error::Precondition(
            "both sides of a secured bijection must be configurations".into(),
        ));
    }
    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = phi.iter().map(|_| graph.add_node(())).collect();
    for (i, &(a, b)) in phi.iter().enumerate() {
        for (j, &(c, d)) in phi.iter().enumerate() {
            if s.lt(a, c) || t.lt(b, d) {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    Ok(!is_cyclic_directed(&graph))
}

/// An order of the pairs in which each one extends both sides by a covering
/// step, if there is one.
pub fn covering_sequence(
    s: &EventStructure,
    t: &EventStructure,
    phi: &[(usize, usize)],
) -> Result<Option<Vec<(usize, usize)>>> {
    sides(s, t, phi)?;
    let mut rest: Vec<(usize, usize)> = phi.to_vec();
    let (mut x, mut y) = (EventSet::new(), EventSet::new());
    let mut out = Vec::with_capacity(phi.len());
    while !rest.is_empty() {
        let Some(k) = rest
            .iter()
            .position(|&(a, b)| s.extends(&x, a) && t.extends(&y, b))
        else {
            return Ok(None);
        };
        let (a, b) = rest.remove(k);
        x.insert(a);
        y.insert(b);
        out.push((a, b));
    }
    Ok(Some(out))
}

fn sides(
    s: &EventStructure,
    t: &EventStructure,
    phi: &[(usize, usize)],
) -> Result<(EventSet, EventSet)> {
    if phi.iter().any(|&(a, b)| a >= s.len() || b >= t.len()) {
        return Err(Error::UnknownEvent("pair outside the structures".into()));
    }
    let x: EventSet = phi.iter().map(|p| p.0).collect();
    let y: EventSet = phi.iter().map(|p| p.1).collect();
    if x.len() != phi.len() || y.len() != phi.len() {
        return Err(Error::Precondition("pairs do not form a bijection".into()));
    }
    Ok((x, y))
}

/// `S ∧ T` for total maps `σ : S → A`, `τ : T → A`, with its projections.
///
/// Events are the prime secured bijections, named `p0, p1, ..` in the
/// lexicographic order of their sorted lists of `(s, t)` id pairs.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub structure: EventStructure,
    /// All synchronised pairs `(s, t)` with `σs = τt`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Graph of each event, as a set of pair indices.
    pub primes: Vec<EventSet>,
    /// Pair index of the top of each event.
    pub top: Vec<usize>,
    pub pi1: EsMap,
    pub pi2: EsMap,
    left: EventStructure,
    right: EventStructure,
    pair_index: HashMap<(usize, usize), usize>,
    prime_index: HashMap<EventSet, usize>,
    secured: Vec<EventSet>,
    secured_index: HashSet<EventSet>,
}

impl Pullback {
    pub fn new(s: &EventStructure, sigma: &EsMap, t: &EventStructure, tau: &EsMap) -> Result<Self> {
        if !sigma.is_total() || !tau.is_total() {
            return Err(Error::Precondition("pullback needs total maps".into()));
        }
        if sigma.source_len() != s.len()
            || tau.source_len() != t.len()
            || sigma.target_len() != tau.target_len()
        {
            return Err(Error::Mismatch("maps do not share a target".into()));
        }
        let limits = Limits::current();
        let pairs: Vec<(usize, usize)> = (0..s.len())
            .flat_map(|a| {
                (0..t.len())
                    .filter(move |&b| sigma.at(a) == tau.at(b))
                    .map(move |b| (a, b))
            })
            .collect();
        limits.check_pairs(pairs.len())?;
        let pair_index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let secured = secured_bijections(s, t, &pairs, &limits)?;
        let side = |phi: &EventSet, left: bool| -> EventSet {
            phi.iter()
                .map(|p| if left { pairs[p].0 } else { pairs[p].1 })
                .collect()
        };
        let tops = |phi: &EventSet| -> Vec<usize> {
            let (mx, my) = (s.maximal(&side(phi, true)), t.maximal(&side(phi, false)));
            phi.iter()
                .filter(|&p| mx.contains(pairs[p].0) && my.contains(pairs[p].1))
                .collect()
        };

        let mut found: Vec<(IdPairs, EventSet, usize)> = par::flat_map(&secured, |phi| {
            let top = tops(phi);
            if top.len() != 1 {
                return Vec::new();
            }
            let mut key: Vec<(String, String)> = phi
                .iter()
                .map(|p| (s.id(pairs[p].0).to_string(), t.id(pairs[p].1).to_string()))
                .collect();
            key.sort();
            vec![(key, phi.clone(), top[0])]
        });
        found.sort();
        let primes: Vec<EventSet> = found.iter().map(|f| f.1.clone()).collect();
        let top: Vec<usize> = found.iter().map(|f| f.2).collect();
        let prime_index: HashMap<EventSet, usize> = primes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();

        let closure = |phi: &EventSet, p: usize| secured_down(s, t, &pairs, phi, p);
        let as_config = |phi: &EventSet| -> EventSet {
            phi.iter().map(|p| prime_index[&closure(phi, p)]).collect()
        };
        let down: Vec<EventSet> = par::map(&primes, as_config);
        let configs: Vec<EventSet> = par::map(&secured, as_config);
        let gens = minimal_inconsistent(&down, &configs);
        let ids = (0..primes.len())
            .map(|i| EventId::new(format!("p{i}")).expect("valid id"))
            .collect();
        let structure = EventStructure::from_down(ids, down, &gens);

        let pi1 = EsMap::total(top.iter().map(|&p| pairs[p].0).collect(), s.len());
        let pi2 = EsMap::total(top.iter().map(|&p| pairs[p].1).collect(), t.len());
        let secured_index = secured.iter().cloned().collect();
        Ok(Self {
            structure,
            pairs,
            primes,
            top,
            pi1,
            pi2,
            left: s.clone(),
            right: t.clone(),
            pair_index,
            prime_index,
            secured,
            secured_index,
        })
    }

    /// Every secured bijection, as a set of pair indices, level by level.
    #[must_use]
    pub fn secured_bijections(&self) -> &[EventSet] {
        &self.secured
    }

    #[must_use]
    pub fn pair_of(&self, s: usize, t: usize) -> Option<usize> {
        self.pair_index.get(&(s, t)).copied()
    }

    /// The event with the given graph.
    #[must_use]
    pub fn event_of(&self, phi: &EventSet) -> Option<usize> {
        self.prime_index.get(phi).copied()
    }

    #[must_use]
    pub fn is_secured_graph(&self, phi: &EventSet) -> bool {
        self.secured_index.contains(phi)
    }

    /// Union of the graphs of a set of events.
    #[must_use]
    pub fn bijection(&self, x: &EventSet) -> EventSet {
        let mut out = EventSet::new();
        for e in x.iter() {
            out.union_with(&self.primes[e]);
        }
        out
    }

    /// Configuration matching a secured bijection: the primes below its pairs.
    #[must_use]
    pub fn configuration_of(&self, phi: &EventSet) -> Option<EventSet> {
        if !self.is_secured_graph(phi) {
            return None;
        }
        phi.iter()
            .map(|p| self.event_of(&self.down_within(phi, p)))
            .collect()
    }

    /// `[p]_φ`: the pairs of `φ` below `p` under `◁*`.
    #[must_use]
    pub fn down_within(&self, phi: &EventSet, p: usize) -> EventSet {
        secured_down(&self.left, &self.right, &self.pairs, phi, p)
    }

    /// `⟨α, β⟩ : X ⇀ S ∧ T` for a commuting cone of partial maps, defined
    /// where `α` and `β` are: `e ↦ [(αe, βe)]` inside the bijection induced
    /// on `[e]`.
    pub fn mediate(&self, x: &EventStructure, alpha: &EsMap, beta: &EsMap) -> Result<EsMap> {
        if alpha.source_len() != x.len()
            || beta.source_len() != x.len()
            || alpha.target_len() != self.left.len()
            || beta.target_len() != self.right.len()
        {
            return Err(Error::Mismatch("cone does not match the pullback".into()));
        }
        if alpha.domain() != beta.domain() {
            return Err(Error::Precondition(
                "cone maps are defined on different events".into(),
            ));
        }
        let pair_at = |e: usize| -> Option<Result<usize>> {
            let (a, b) = (alpha.get(e)?, beta.get(e)?);
            Some(self.pair_of(a, b).ok_or_else(|| {
                Error::Precondition(format!("cone does not commute at {}", x.id(e)))
            }))
        };
        let image = (0..x.len())
            .map(|e| {
                let Some(top) = pair_at(e) else {
                    return Ok(None);
                };
                let top = top?;
                let phi = x
                    .below(e)
                    .iter()
                    .filter_map(pair_at)
                    .collect::<Result<EventSet>>()?;
                if !self.is_secured_graph(&phi) {
                    return Err(Error::NotAMap(format!(
                        "cone below {} is not a secured bijection",
                        x.id(e)
                    )));
                }
                let prime = self.event_of(&self.down_within(&phi, top)).ok_or_else(|| {
                    Error::NotAMap(format!("no prime above {} in the pullback", x.id(e)))
                })?;
                Ok(Some(prime))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EsMap::new(image, self.structure.len()))
    }

    #[must_use]
    pub fn left(&self) -> &EventStructure {
        &self.left
    }

    #[must_use]
    pub fn right(&self) -> &EventStructure {
        &self.right
    }
}

fn secured_down(
    s: &EventStructure,
    t: &EventStructure,
    pairs: &[(usize, usize)],
    phi: &EventSet,
    p: usize,
) -> EventSet {
    let mut d = EventSet::singleton(p);
    loop {
        let xs = s.down_closure(&d.iter().map(|q| pairs[q].0).collect());
        let yt = t.down_closure(&d.iter().map(|q| pairs[q].1).collect());
        let next: EventSet = phi
            .iter()
            .filter(|&q| xs.contains(pairs[q].0) || yt.contains(pairs[q].1))
            .collect();
        if next == d {
            return d;
        }
        d = next;
    }
}

/// Breadth-first closure from the empty bijection under covering extensions.
fn secured_bijections(
    s: &EventStructure,
    t: &EventStructure,
    pairs: &[(usize, usize)],
    limits: &Limits,
) -> Result<Vec<EventSet>> {
    let cap = limits.max_configurations();
    let mut all = vec![EventSet::new()];
    let mut level = vec![EventSet::new()];
    while !level.is_empty() {
        let mut next = par::flat_map(&level, |phi| {
            let x: EventSet = phi.iter().map(|p| pairs[p].0).collect();
            let y: EventSet = phi.iter().map(|p| pairs[p].1).collect();
            (0..pairs.len())
                .filter(|&p| s.extends(&x, pairs[p].0) && t.extends(&y, pairs[p].1))
                .map(|p| phi.with(p))
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

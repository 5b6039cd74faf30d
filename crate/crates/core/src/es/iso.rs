//! Exhaustive isomorphism search by backtracking.

use std::collections::HashSet;

use super::{EventStructure, Polarity};
use crate::set::EventSet;

/// Parameters of an isomorphism search from `s` to `t`.
#[derive(Clone, Copy)]
pub struct IsoQuery<'a> {
    s: &'a EventStructure,
    t: &'a EventStructure,
    pol: Option<(&'a [Polarity], &'a [Polarity])>,
    over: Option<(&'a [usize], &'a [usize])>,
    limit: usize,
}

impl<'a> IsoQuery<'a> {
    #[must_use]
    pub fn new(s: &'a EventStructure, t: &'a EventStructure) -> Self {
        Self {
            s,
            t,
            pol: None,
            over: None,
            limit: usize::MAX,
        }
    }

    /// Require polarity preservation.
    #[must_use]
    pub fn polarities(mut self, s: &'a [Polarity], t: &'a [Polarity]) -> Self {
        self.pol = Some((s, t));
        self
    }

    /// Require `t_label ∘ φ = s_label` for labellings into a common game.
    #[must_use]
    pub fn over(mut self, s_label: &'a [usize], t_label: &'a [usize]) -> Self {
        self.over = Some((s_label, t_label));
        self
    }

    /// Stop after this many isomorphisms.
    #[must_use]
    pub fn limit(mut self, n: usize) -> Self {
        self.limit = n;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    pol: Option<Polarity>,
    label: Option<usize>,
    depth: usize,
    degree: (usize, usize),
    below: usize,
    above: usize,
}

fn depths(e: &EventStructure) -> Vec<usize> {
    let mut order: Vec<usize> = (0..e.len()).collect();
    order.sort_by_key(|&x| e.below(x).len());
    let mut depth = vec![0; e.len()];
    for x in order {
        depth[x] = e
            .immediate_causes(x)
            .iter()
            .map(|d| depth[d] + 1)
            .max()
            .unwrap_or(0);
    }
    depth
}

fn keys(e: &EventStructure, pol: Option<&[Polarity]>, label: Option<&[usize]>) -> Vec<Key> {
    let depth = depths(e);
    let n = e.len();
    let mut out_deg = vec![0; n];
    let mut above = vec![0; n];
    for b in 0..n {
        for a in e.immediate_causes(b).iter() {
            out_deg[a] += 1;
        }
        for a in e.below(b).iter() {
            if a != b {
                above[a] += 1;
            }
        }
    }
    (0..n)
        .map(|x| Key {
            pol: pol.map(|p| p[x]),
            label: label.map(|l| l[x]),
            depth: depth[x],
            degree: (e.immediate_causes(x).len(), out_deg[x]),
            below: e.below(x).len(),
            above: above[x],
        })
        .collect()
}

/// All isomorphisms `φ : S → T` matching the query, as index tables. The
/// search order follows (polarity, label, causal depth, degree, id).
#[must_use]
pub fn find_isomorphisms(q: &IsoQuery<'_>) -> Vec<Vec<usize>> {
    let (s, t) = (q.s, q.t);
    let n = s.len();
    if t.len() != n || s.generators().len() != t.generators().len() || q.limit == 0 {
        return Vec::new();
    }
    let ks = keys(s, q.pol.map(|p| p.0), q.over.map(|o| o.0));
    let kt = keys(t, q.pol.map(|p| p.1), q.over.map(|o| o.1));
    let mut sorted_s = ks.clone();
    let mut sorted_t = kt.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&ks[a], &ks[b]);
        (x.pol, x.label, x.depth, x.degree, s.id(a)).cmp(&(
            y.pol,
            y.label,
            y.depth,
            y.degree,
            s.id(b),
        ))
    });
    let mut position = vec![0; n];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&e| {
            let mut c: Vec<usize> = (0..n).filter(|&f| kt[f] == ks[e]).collect();
            c.sort_by(|&a, &b| t.id(a).cmp(t.id(b)));
            c
        })
        .collect();
    let mut closing: Vec<Vec<&EventSet>> = vec![Vec::new(); n];
    for g in s.generators() {
        if let Some(last) = g.iter().map(|e| position[e]).max() {
            closing[last].push(g);
        }
    }
    let t_gens: HashSet<&EventSet> = t.generators().iter().collect();
    let mut search = Search {
        s,
        t,
        order: &order,
        candidates: &candidates,
        closing: &closing,
        t_gens: &t_gens,
        phi: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        limit: q.limit,
    };
    search.go(0);
    search.found
}

/// First isomorphism, if any.
#[must_use]
pub fn find_isomorphism(q: &IsoQuery<'_>) -> Option<Vec<usize>> {
    find_isomorphisms(&q.limit(1)).into_iter().next()
}

struct Search<'q> {
    s: &'q EventStructure,
    t: &'q EventStructure,
    order: &'q [usize],
    candidates: &'q [Vec<usize>],
    closing: &'q [Vec<&'q EventSet>],
    t_gens: &'q HashSet<&'q EventSet>,
    phi: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn go(&mut self, k: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if k == self.order.len() {
            self.found.push(self.phi.clone());
            return;
        }
        let e = self.order[k];
        for &f in &self.candidates[k] {
            if self.used[f] || !self.compatible(k, e, f) {
                continue;
            }
            self.phi[e] = f;
            self.used[f] = true;
            if self.closing[k].iter().all(|g| {
                self.t_gens
                    .contains(&g.iter().map(|x| self.phi[x]).collect::<EventSet>())
            }) {
                self.go(k + 1);
            }
            self.used[f] = false;
            self.phi[e] = usize::MAX;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }

    fn compatible(&self, k: usize, e: usize, f: usize) -> bool {
        self.order[..k].iter().all(|&d| {
            let g = self.phi[d];
            self.s.leq(d, e) == self.t.leq(g, f) && self.s.leq(e, d) == self.t.leq(f, g)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conflicting_pair_has_two_automorphisms_over_the_game() {
        let s = EventStructure::from_lists(&["x", "y"], &[], &[&["x", "y"]]).unwrap();
        let pol = [Polarity::Pos, Polarity::Pos];
        let label = [0, 0];
        let q = IsoQuery::new(&s, &s)
            .polarities(&pol, &pol)
            .over(&label, &label);
        assert_eq!(find_isomorphisms(&q).len(), 2);
    }

    #[test]
    fn identity_is_found() {
        let s =
            EventStructure::from_lists(&["a", "b", "c"], &[("a", "b")], &[&["b", "c"]]).unwrap();
        let label = [0, 1, 2];
        let all = find_isomorphisms(&IsoQuery::new(&s, &s).over(&label, &label));
        assert_eq!(all, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn consistency_is_reflected() {
        let a = EventStructure::from_lists(&["a", "b"], &[], &[&["a", "b"]]).unwrap();
        let b = EventStructure::from_lists(&["a", "b"], &[], &[]).unwrap();
        assert!(find_isomorphism(&IsoQuery::new(&a, &b)).is_none());
    }
}

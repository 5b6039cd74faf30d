use std::collections::HashMap;

use esgame_core::es::{check_hiding_map, check_map, parallel, project, MapVerdict};
use esgame_core::games::{copycat, scott_leq, scott_leq_by_search, scott_leq_via_copycat};
use esgame_core::laws::{is_courteous, is_receptive};
use esgame_core::{EsMap, Esp, EventSet, EventStructure, Polarity};
use proptest::prelude::*;

/// Small esps: causality only runs upwards in index, conflicts between
/// incomparable pairs.
fn esp_strategy(max: usize) -> impl Strategy<Value = Esp> {
    (0..=max).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            Just(n),
            prop::collection::vec(prop::bool::weighted(0.3), pairs),
            prop::collection::vec(prop::bool::weighted(0.2), pairs),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(n, edges, conflicts, pol)| build(n, &edges, &conflicts, &pol))
    })
}

fn build(n: usize, edges: &[bool], conflicts: &[bool], pol: &[bool]) -> Esp {
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut prec = Vec::new();
    let mut k = 0;
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if edges[k] {
                prec.push((refs[i], refs[j]));
            }
            pairs.push((i, j, conflicts[k]));
            k += 1;
        }
    }
    let plain = EventStructure::from_lists(&refs, &prec, &[]).unwrap();
    let clash: Vec<[&str; 2]> = pairs
        .iter()
        .filter(|&&(i, j, c)| {
            c && !plain.leq(i, j) && !(0..n).any(|k| plain.leq(i, k) && plain.leq(j, k))
        })
        .map(|&(i, j, _)| [refs[i], refs[j]])
        .collect();
    let clash_refs: Vec<&[&str]> = clash.iter().map(|c| &c[..]).collect();
    let s = EventStructure::from_lists(&refs, &prec, &clash_refs).unwrap();
    let pol = pol
        .iter()
        .map(|&p| if p { Polarity::Pos } else { Polarity::Neg })
        .collect();
    Esp::new(s, pol).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = EventSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn consistency_depends_on_down_closure(a in esp_strategy(5)) {
        for x in subsets(a.len()) {
            prop_assert_eq!(a.is_consistent(&x), a.is_consistent(&a.down_closure(&x)));
        }
    }

    #[test]
    fn configurations_are_reached_by_coverings(a in esp_strategy(5)) {
        let c = a.configurations().unwrap();
        let mut reached = vec![false; c.len()];
        reached[c.position(&EventSet::new()).unwrap()] = true;
        for cov in &c.covers {
            prop_assert!(c.configs[cov.to] == c.configs[cov.from].with(cov.event));
            prop_assert!(reached[cov.from]);
            reached[cov.to] = true;
        }
        prop_assert!(reached.iter().all(|&r| r));
        let brute = subsets(a.len()).filter(|x| a.is_configuration(x)).count();
        prop_assert_eq!(brute, c.len());
    }

    #[test]
    fn parallel_product_law(a in esp_strategy(5), b in esp_strategy(5)) {
        let (both, i0, i1) = parallel(&a, &b);
        let (ca, cb, cab) = (a.configurations().unwrap(), b.configurations().unwrap(), both.configurations().unwrap());
        prop_assert_eq!(cab.len(), ca.len() * cb.len());
        let pair = |x: &EventSet, y: &EventSet| i0.apply(x).union(&i1.apply(y));
        for x in ca.iter() {
            for y in cb.iter() {
                prop_assert!(cab.contains(&pair(x, y)));
                for x2 in ca.iter() {
                    for y2 in cb.iter() {
                        let ordered = x.is_subset(x2) && y.is_subset(y2);
                        prop_assert_eq!(ordered, pair(x, y).is_subset(&pair(x2, y2)));
                    }
                }
            }
        }
    }

    #[test]
    fn maps_reflect_causality(a in esp_strategy(4), b in esp_strategy(4), image in prop::collection::vec(any::<prop::sample::Index>(), 4)) {
        prop_assume!(!b.is_empty());
        let f = EsMap::total((0..a.len()).map(|e| image[e].index(b.len())).collect(), b.len());
        if check_map(&a, &b, &f, None).unwrap().is_map() {
            for x in 0..a.len() {
                for y in 0..a.len() {
                    let pair = EventSet::from_iter([x, y]);
                    if x != y && a.is_consistent(&pair) && b.leq(f.at(x), f.at(y)) {
                        prop_assert!(a.leq(x, y));
                    }
                }
            }
            // Agreement on configurations pins the function down.
            let configs = a.configurations().unwrap();
            let by_config: HashMap<EventSet, EventSet> = configs.iter().map(|x| (x.clone(), f.apply(x))).collect();
            for e in 0..a.len() {
                let single = by_config[a.below(e)].difference(&by_config[&a.below(e).without(e)]);
                prop_assert_eq!(single, EventSet::singleton(f.at(e)));
            }
        }
    }

    #[test]
    fn projections_compose_and_hide(a in esp_strategy(5), v in any::<u32>(), w in any::<u32>()) {
        let n = a.len();
        let vset: EventSet = (0..n).filter(|i| v >> i & 1 == 1).collect();
        let wset: EventSet = (0..n).filter(|i| w >> i & 1 == 1).collect();
        let once = project(&a, &vset.intersection(&wset)).unwrap();
        let first = project(&a, &vset).unwrap();
        let inner: EventSet = first.embedding.iter().enumerate().filter(|&(_, &e)| wset.contains(e)).map(|(i, _)| i).collect();
        let twice = project(&first.structure, &inner).unwrap();
        prop_assert_eq!(&once.structure, &twice.structure);
        let check = check_hiding_map(&a, &first.structure, &first.hiding).unwrap();
        prop_assert!(check.is_hiding);
    }

    #[test]
    fn scott_order_criteria_agree(a in esp_strategy(5)) {
        let configs = a.configurations().unwrap();
        let cc = copycat(&a).unwrap();
        let all: Vec<EventSet> = configs.iter().cloned().collect();
        let leq = |x: &EventSet, y: &EventSet| scott_leq(&a, x, y).unwrap().is_some();
        for x in &all {
            prop_assert!(leq(x, x));
            for y in &all {
                let i = leq(x, y);
                prop_assert_eq!(i, scott_leq_via_copycat(cc.inner(), &a, x, y).unwrap());
                prop_assert_eq!(i, scott_leq_by_search(&a, &all, x, y).unwrap());
                if i && leq(y, x) {
                    prop_assert_eq!(x, y);
                }
                for z in &all {
                    if i && leq(y, z) {
                        prop_assert!(leq(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn copycat_edges_match_the_clauses(a in esp_strategy(5)) {
        let cc = copycat(&a).unwrap();
        let inner = cc.inner();
        let n = a.len();
        let pol = |s: usize| if s < n { a.polarity(s).flip() } else { a.polarity(s - n) };
        let expected: Vec<(usize, usize)> = {
            let mut v = Vec::new();
            for copy in 0..2 {
                for (x, y) in a.immediate_edges() {
                    let (s, t) = (copy * n + x, copy * n + y);
                    // Otherwise the path through both twins is longer.
                    if pol(s) == Polarity::Pos || pol(t) == Polarity::Neg {
                        v.push((s, t));
                    }
                }
            }
            for e in 0..n {
                // (i, e) negative in A⊥ ∥ A points to its twin.
                let (neg, pos) = if a.polarity(e) == Polarity::Pos { (e, n + e) } else { (n + e, e) };
                v.push((neg, pos));
            }
            v.sort_unstable();
            v
        };
        let mut got = inner.immediate_edges();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
        for s in 0..2 * n {
            prop_assert_eq!(inner.polarity(s), pol(s));
        }
        prop_assert!(is_receptive(&cc).unwrap().holds());
        prop_assert!(is_courteous(&cc).holds());
    }

    #[test]
    fn copycat_closed_form_matches_transitive_closure(a in esp_strategy(5)) {
        let n = a.len();
        let cc = copycat(&a).unwrap();
        // Generating relation: the order inside each copy, plus every
        // negative event below its positive twin.
        let mut below: Vec<EventSet> = (0..2 * n).map(EventSet::singleton).collect();
        for copy in 0..2 {
            for (x, y) in a.immediate_edges() {
                below[copy * n + y].insert(copy * n + x);
            }
        }
        for e in 0..n {
            let (neg, pos) = if a.polarity(e) == Polarity::Pos { (e, n + e) } else { (n + e, e) };
            below[pos].insert(neg);
        }
        loop {
            let next: Vec<EventSet> = below
                .iter()
                .map(|d| d.iter().fold(d.clone(), |mut acc, k| { acc.union_with(&below[k]); acc }))
                .collect();
            if next == below {
                break;
            }
            below = next;
        }
        for (s, want) in below.iter().enumerate() {
            prop_assert_eq!(cc.inner().below(s), want);
        }
        prop_assert!(matches!(
            check_map(cc.inner(), cc.game(), &cc.labelling(), Some((cc.inner().polarities(), cc.game().polarities()))).unwrap(),
            MapVerdict::PolarityPreservingMap
        ));
    }
}

//! Seeded law suites. Every trial draws from its own generator, derived from
//! the suite seed and the trial number, so reports do not depend on how
//! trials are scheduled.

use std::fmt;
use std::time::{Duration, Instant};

use esgame_core::algebra::{pentagon, reindex, snake_check, triangle, unitor_naturality};
use esgame_core::es::{check_hiding_map, check_map, ids, parallel, project};
use esgame_core::fixtures::{game_b, game_w, game_y};
use esgame_core::games::{copycat, scott_leq, scott_leq_by_search, scott_leq_via_copycat};
use esgame_core::interaction::{
    compose, interact, interaction, minimal_witness, zipped_hiding, Open, Pullback,
};
use esgame_core::laws::{check_strategy, is_courteous, is_receptive};
use esgame_core::{par, EsMap, Esp, EventSet, EventStructure, Polarity, PreStrategy, Result};
use esgame_io::gen::{
    random_esp, random_family, random_family_chain, random_family_pair, random_prestrategy, rng,
    EspFlags, PreFlags, SeededRng,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// The first failing trial and what went wrong.
    pub first_failure: Option<(usize, String)>,
    pub elapsed: Duration,
}

impl LawReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<22} {:>4}/{:<4} {:>8.2}s",
            self.name,
            self.trials - self.failures,
            self.trials,
            self.elapsed.as_secs_f64()
        )?;
        if let Some((i, why)) = &self.first_failure {
            write!(f, "  first failure: trial {i}: {why}")?;
        }
        Ok(())
    }
}

/// A trial passes with `Ok(None)`; `Ok(Some(why))` is a counterexample.
type Trial = Result<Option<String>>;

fn trial_seed(seed: u64, i: usize) -> u64 {
    // splitmix64 step, so neighbouring trials get unrelated streams.
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run<F>(name: &'static str, seed: u64, trials: usize, f: F) -> LawReport
where
    F: Fn(usize, &mut SeededRng) -> Trial + Sync + Send,
{
    let start = Instant::now();
    let outcomes = par::map_range(trials, |i| match f(i, &mut rng(trial_seed(seed, i))) {
        Ok(None) => None,
        Ok(Some(why)) => Some(why),
        Err(e) => Some(format!("error: {e}")),
    });
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    let first_failure = outcomes
        .into_iter()
        .enumerate()
        .find_map(|(i, o)| o.map(|why| (i, why)));
    LawReport {
        name,
        trials,
        failures,
        first_failure,
        elapsed: start.elapsed(),
    }
}

fn fail(cond: bool, why: impl FnOnce() -> String) -> Trial {
    Ok((!cond).then(why))
}

fn small_esp(rng: &mut SeededRng, max: usize) -> Esp {
    let n = rng.random_range(0..=max);
    random_esp(rng, n, &EspFlags::default(), "e")
}

fn subset(rng: &mut SeededRng, n: usize) -> EventSet {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

/// A family member with game and carrier within `max` events, by redrawing.
fn bounded_family(rng: &mut SeededRng, max: usize) -> Result<PreStrategy> {
    loop {
        let s = random_family(rng, max.min(3), 2)?;
        if s.game().len() <= max && s.inner().len() <= max {
            return Ok(s);
        }
    }
}

/// Receptive ∧ courteous, the Scott fibration, the negative and positive
/// fibrations and copycat invariance agree. Even trials are random
/// pre-strategies (`|S|, |A| ≤ max_events`), odd trials family members,
/// which must also be strategies.
pub fn main_theorem(seed: u64, trials: usize, max_events: usize) -> LawReport {
    run("main theorem", seed, trials, |i, rng| {
        let (sigma, family) = if i % 2 == 0 {
            let game = small_esp(rng, max_events);
            let flags = PreFlags {
                max_events,
                ..PreFlags::default()
            };
            (random_prestrategy(rng, &game, &flags)?, false)
        } else {
            (bounded_family(rng, max_events)?, true)
        };
        let v = check_strategy(&sigma)?;
        if !v.consistent() {
            return Ok(Some(format!(
                "characterisations disagree: receptive {}, courteous {}, fibrations {:?}, copycat iso {}",
                v.receptive.holds(),
                v.courteous.holds(),
                v.fibration.iter().map(|(o, f)| format!("{o}={}", f.holds())).collect::<Vec<_>>(),
                v.copycat_iso.is_some()
            )));
        }
        fail(!family || v.copycat_iso.is_some(), || {
            "family member is not a strategy".into()
        })
    })
}

/// A cone into `S ← P → T` over `X`, built from `P` below a down-closed `V`
/// with extra causality, extra conflict and possibly a duplicated event
/// (in conflict with its twin). Returns `X` and the map `X → P`.
fn random_cone(rng: &mut SeededRng, pb: &Pullback, max: usize) -> Result<(EventStructure, EsMap)> {
    let p = &pb.structure;
    let mut v = p.down_closure(&subset(rng, p.len()));
    while v.len() > max {
        let top = p.maximal(&v).first().expect("non-empty");
        v.remove(top);
    }
    let base = project(p, &v)?;
    let b = &base.structure;
    let n = b.len();
    let mut to_p = base.embedding.clone();
    let mut edges = b.immediate_edges();
    let mut conflicts: Vec<EventSet> = b.generators().to_vec();
    let maximal: Vec<usize> = b.maximal(&b.events()).iter().collect();
    if n < max && !maximal.is_empty() && rng.random_bool(0.5) {
        let e = maximal[rng.random_range(0..maximal.len())];
        edges.extend(b.immediate_causes(e).iter().map(|c| (c, n)));
        let copied: Vec<EventSet> = conflicts
            .iter()
            .filter(|g| g.contains(e))
            .map(|g| g.without(e).with(n))
            .collect();
        conflicts.extend(copied);
        conflicts.push(EventSet::from_iter([e, n]));
        to_p.push(to_p[e]);
    }
    let count = to_p.len();
    let names: Vec<String> = (0..count).map(|i| format!("x{i}")).collect();
    let plain = EventStructure::build(ids(names.iter().map(String::as_str))?, &edges, &conflicts)?;
    // Extra causality along a linear extension, then extra conflict.
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&e| (plain.below(e).len(), e));
    let mut extra_edges = edges.clone();
    for (k, &j) in order.iter().enumerate() {
        for &i in &order[..k] {
            if rng.random_bool(0.2) {
                extra_edges.push((i, j));
            }
        }
    }
    let x = EventStructure::build(
        ids(names.iter().map(String::as_str))?,
        &extra_edges,
        &conflicts,
    )
    .unwrap_or_else(|_| plain.clone());
    let mut extra_conflicts = conflicts.clone();
    for j in 0..count {
        for i in 0..j {
            let free =
                !x.leq(i, j) && !x.leq(j, i) && !(0..count).any(|k| x.leq(i, k) && x.leq(j, k));
            if free && rng.random_bool(0.15) {
                extra_conflicts.push(EventSet::from_iter([i, j]));
            }
        }
    }
    let ids_x: Vec<_> = x.ids().to_vec();
    let edges_x = x.immediate_edges();
    let x = EventStructure::build(ids_x, &edges_x, &extra_conflicts).unwrap_or(x);
    Ok((x, EsMap::total(to_p, p.len())))
}

/// Every function `X → P` commuting with both projections, whether or not it is a map.
fn triangle_candidates(pb: &Pullback, alpha: &EsMap, beta: &EsMap) -> Vec<Vec<usize>> {
    let options: Vec<Vec<usize>> = (0..alpha.source_len())
        .map(|x| {
            (0..pb.structure.len())
                .filter(|&p| pb.pi1.at(p) == alpha.at(x) && pb.pi2.at(p) == beta.at(x))
                .collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for opts in &options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter()
                    .map(move |&p| [prefix.clone(), vec![p]].concat())
            })
            .collect();
    }
    out
}

/// The mediating map of a random commuting cone exists, makes both
/// triangles commute and is the only map that does.
pub fn pullback_universal_property(seed: u64, trials: usize) -> LawReport {
    run("pullback UMP", seed, trials, |_, rng| {
        let flags = PreFlags {
            max_events: 4,
            ..PreFlags::default()
        };
        // Redraw a few times rather than test mostly empty pullbacks.
        let mut attempt = 0;
        let (s, t, pb) = loop {
            let n = rng.random_range(1..=3);
            let game = random_esp(rng, n, &EspFlags::default(), "g");
            let s = random_prestrategy(rng, &game, &flags)?;
            let t = random_prestrategy(rng, &game, &flags)?;
            let pb = Pullback::new(
                s.inner().structure(),
                &s.labelling(),
                t.inner().structure(),
                &t.labelling(),
            )?;
            attempt += 1;
            if !pb.structure.is_empty() || attempt == 8 {
                break (s, t, pb);
            }
        };
        let (ss, ts) = (s.inner().structure(), t.inner().structure());
        let (x, to_p) = random_cone(rng, &pb, 4)?;
        let alpha = to_p.then(&pb.pi1)?;
        let beta = to_p.then(&pb.pi2)?;
        if !check_map(&x, ss, &alpha, None)?.is_map() || !check_map(&x, ts, &beta, None)?.is_map() {
            return Ok(Some("generated cone is not made of maps".into()));
        }
        let h = pb.mediate(&x, &alpha, &beta)?;
        if !h.is_total() || h.then(&pb.pi1)? != alpha || h.then(&pb.pi2)? != beta {
            return Ok(Some("mediating map breaks a triangle".into()));
        }
        let p_len = pb.structure.len();
        let maps: Vec<Vec<usize>> = triangle_candidates(&pb, &alpha, &beta)
            .into_iter()
            .filter(|c| {
                check_map(&x, &pb.structure, &EsMap::total(c.clone(), p_len), None)
                    .is_ok_and(|v| v.is_map())
            })
            .collect();
        fail(maps == [h.values()], || {
            format!("{} maps satisfy both triangles", maps.len())
        })
    })
}

/// The three characterisations of the Scott order agree and give a partial order.
pub fn scott_order(seed: u64, trials: usize, max_events: usize) -> LawReport {
    run("scott order", seed, trials, |_, rng| {
        let a = small_esp(rng, max_events);
        let configs: Vec<EventSet> = a.configurations()?.iter().cloned().collect();
        let cc = copycat(&a)?;
        let mut leq = vec![vec![false; configs.len()]; configs.len()];
        for (i, x) in configs.iter().enumerate() {
            for (j, y) in configs.iter().enumerate() {
                let direct = scott_leq(&a, x, y)?.is_some();
                let via_cc = scott_leq_via_copycat(cc.inner(), &a, x, y)?;
                let search = scott_leq_by_search(&a, &configs, x, y)?;
                if direct != via_cc || direct != search {
                    return Ok(Some(format!(
                        "criteria disagree on {} ⊑ {}",
                        a.show(x),
                        a.show(y)
                    )));
                }
                leq[i][j] = direct;
            }
        }
        let m = configs.len();
        for i in 0..m {
            if !leq[i][i] {
                return Ok(Some(format!("not reflexive at {}", a.show(&configs[i]))));
            }
            for j in 0..m {
                if i != j && leq[i][j] && leq[j][i] {
                    return Ok(Some("not antisymmetric".into()));
                }
                for k in 0..m {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Ok(Some("not transitive".into()));
                    }
                }
            }
        }
        Ok(None)
    })
}

/// `𝒞(E ∥ F) ≅ 𝒞(E) × 𝒞(F)` as orders.
pub fn product_law(seed: u64, trials: usize) -> LawReport {
    run("parallel product", seed, trials, |_, rng| {
        let e = small_esp(rng, 5).into_structure();
        let f = small_esp(rng, 5).into_structure();
        let (both, i0, i1) = parallel(&e, &f);
        let (ce, cf, cb) = (
            e.configurations()?,
            f.configurations()?,
            both.configurations()?,
        );
        if cb.len() != ce.len() * cf.len() {
            return Ok(Some(format!(
                "{} configurations, expected {} × {}",
                cb.len(),
                ce.len(),
                cf.len()
            )));
        }
        let (i0, i1) = (&i0, &i1);
        let pairs: Vec<(&EventSet, &EventSet, EventSet)> = ce
            .iter()
            .flat_map(|x| {
                cf.iter()
                    .map(move |y| (x, y, i0.apply(x).union(&i1.apply(y))))
            })
            .collect();
        if pairs.iter().any(|(_, _, z)| !cb.contains(z)) {
            return Ok(Some(
                "a pair of configurations is not a configuration".into(),
            ));
        }
        for (x, y, z) in &pairs {
            for (x2, y2, z2) in &pairs {
                if (x.is_subset(x2) && y.is_subset(y2)) != z.is_subset(z2) {
                    return Ok(Some("pairing is not an order isomorphism".into()));
                }
            }
        }
        Ok(None)
    })
}

/// Composites of family strategies are receptive and courteous.
pub fn strategy_closure(seed: u64, trials: usize) -> LawReport {
    run("strategy closure", seed, trials, |_, rng| {
        let (sigma, tau) = random_family_pair(rng, 3)?;
        let c = compose(&sigma, &tau)?;
        let s = c.strategy();
        let receptive = is_receptive(s)?.holds();
        let courteous = is_courteous(s).holds();
        fail(receptive && courteous, || {
            format!("composite: receptive {receptive}, courteous {courteous}")
        })
    })
}

fn game_size(rng: &mut SeededRng) -> usize {
    rng.random_range(1..=2)
}

pub fn pentagons(seed: u64, trials: usize) -> LawReport {
    run("pentagon", seed, trials, |_, rng| {
        let size = game_size(rng);
        let c = random_family_chain(rng, size, 4)?;
        fail(pentagon(&c[0], &c[1], &c[2], &c[3])?.holds(), || {
            "the two sides differ".into()
        })
    })
}

pub fn triangles(seed: u64, trials: usize) -> LawReport {
    run("unit triangle", seed, trials, |_, rng| {
        let size = game_size(rng);
        let c = random_family_chain(rng, size, 2)?;
        fail(triangle(&c[0], &c[1])?.holds(), || {
            "the two sides differ".into()
        })
    })
}

/// Both unitors commute with a random reindexing 2-cell.
pub fn unitor_naturality_suite(seed: u64, trials: usize) -> LawReport {
    run("unitor naturality", seed, trials, |_, rng| {
        let size = game_size(rng);
        let sigma = random_family(rng, size, 1)?;
        let mut perm: Vec<usize> = (0..sigma.inner().len()).collect();
        perm.shuffle(rng);
        let (moved, f) = reindex(&sigma, &perm)?;
        fail(unitor_naturality(&sigma, &moved, &f)?, || {
            "a unitor square does not commute".into()
        })
    })
}

/// Both snake equations on random games, then on `𝕐`, `𝕎` and `𝔹`.
pub fn compact_closure(seed: u64, trials: usize, max_events: usize) -> LawReport {
    let fixed = [game_y(), game_w(), game_b()];
    run("compact closure", seed, trials + fixed.len(), |i, rng| {
        let a = if i < trials {
            small_esp(rng, max_events)
        } else {
            fixed[i - trials].clone()
        };
        let snake = snake_check(&a)?;
        fail(snake.holds(), || {
            format!(
                "on {} events: first {}, second {}",
                a.len(),
                snake.first_iso.is_some(),
                snake.second_iso.is_some()
            )
        })
    })
}

/// Projections, their composites and zipped hidings are hiding maps, and
/// zipped witness tables are the least preimages.
pub fn hiding_algebra(seed: u64, trials: usize) -> LawReport {
    run("hiding algebra", seed, trials, |_, rng| {
        let e = small_esp(rng, 5).into_structure();
        let v = subset(rng, e.len());
        let first = project(&e, &v)?;
        if !check_hiding_map(&e, &first.structure, &first.hiding)?.is_hiding {
            return Ok(Some("a projection is not a hiding map".into()));
        }
        let w = subset(rng, first.structure.len());
        let second = project(&first.structure, &w)?;
        let both = first.hiding.then(&second.hiding)?;
        if !check_hiding_map(&e, &second.structure, &both)?.is_hiding {
            return Ok(Some("a composite of hidings is not a hiding map".into()));
        }

        let size = game_size(rng);
        let c = random_family_chain(rng, size, 3)?;
        let ts = compose(&c[0], &c[1])?;
        let u = Open::from_strategy(&c[2])?;
        let src = interact(&interaction(&c[0], &c[1])?.open, &u)?;
        let dst = interact(&ts.open, &u)?;
        let zipped = zipped_hiding(
            &src,
            &dst,
            &ts.hiding,
            &EsMap::identity(c[2].inner().len()),
            &[Some(0), None, Some(1), Some(2)],
        )?;
        let check = check_hiding_map(src.structure(), dst.structure(), &zipped)?;
        let Some(table) = check.witness else {
            return Ok(Some("a zipped hiding is not a hiding map".into()));
        };
        let src_configs = src.structure().configurations()?;
        for (y, wit) in &table {
            let least = src_configs
                .iter()
                .filter(|x| &zipped.apply(x) == y)
                .min_by_key(|x| x.len())
                .expect("hiding maps are surjective on configurations");
            let below_all = src_configs
                .iter()
                .filter(|x| &zipped.apply(x) == y)
                .all(|x| least.is_subset(x));
            if least != wit || !below_all {
                return Ok(Some(format!(
                    "witness of {} is not the least preimage",
                    dst.structure().show(y)
                )));
            }
        }
        Ok(None)
    })
}

/// Immediate causality of `CC_A` is exactly: `a ⇢ a'` inside a copy when
/// the source is positive or the target negative, and every negative event
/// to its twin.
pub fn copycat_structure(seed: u64, trials: usize) -> LawReport {
    run("copycat structure", seed, trials, |_, rng| {
        let a = small_esp(rng, 5);
        let cc = copycat(&a)?;
        let inner = cc.inner();
        let n = a.len();
        let place = |s: usize| if s < n { (0, s) } else { (1, s - n) };
        let pol = |s: usize| {
            if s < n {
                a.polarity(s).flip()
            } else {
                a.polarity(s - n)
            }
        };
        for s in 0..2 * n {
            if inner.polarity(s) != pol(s) {
                return Ok(Some(format!("{} has the wrong polarity", inner.id(s))));
            }
        }
        let clause = |s: usize, t: usize| {
            let ((i, x), (j, y)) = (place(s), place(t));
            let same = i == j
                && a.is_immediate(x, y)
                && (pol(s) == Polarity::Pos || pol(t) == Polarity::Neg);
            let twin = i != j && x == y && pol(s) == Polarity::Neg;
            (same, twin)
        };
        for s in 0..2 * n {
            for t in 0..2 * n {
                let (same, twin) = clause(s, t);
                if inner.is_immediate(s, t) != (same || twin) {
                    return Ok(Some(format!(
                        "edge {} ⇢ {} disagrees with the clauses",
                        inner.id(s),
                        inner.id(t)
                    )));
                }
            }
        }
        Ok(None)
    })
}

/// For a courteous `σ : A ⊸ B`, every minimal witness of `CC_B ⊙ σ` has
/// `x^l_B ⊆⁻ x^r_B`: the copycat side only ever adds negative moves.
pub fn copycat_witnesses(seed: u64, trials: usize) -> LawReport {
    run("copycat witnesses", seed, trials, |_, rng| {
        let size = game_size(rng);
        let sigma = random_family(rng, size, 1)?;
        let b = sigma
            .split()
            .expect("family members carry a split")
            .right
            .clone();
        let c = compose(&sigma, &copycat(&b)?)?;
        let (label, shared) = (&c.interaction.open.label, c.interaction.shared);
        for z in c.open.structure.configurations()?.iter() {
            let w = minimal_witness(&c, z)?;
            let part = |k: usize| -> EventSet {
                w.iter()
                    .filter(|&e| label[e].0 == k)
                    .map(|e| label[e].1)
                    .collect()
            };
            let (left, right) = (part(shared), part(shared + 1));
            let extra = right.difference(&left);
            if !left.is_subset(&right) || extra.iter().any(|e| b.polarity(e) == Polarity::Pos) {
                return fail(false, || {
                    format!(
                        "witness {} has x^l {} and x^r {}",
                        c.interaction.structure().show(&w),
                        b.show(&left),
                        b.show(&right)
                    )
                });
            }
        }
        Ok(None)
    })
}

/// Trials per suite when the main theorem gets 200.
pub const STANDARD_COUNTS: [(&str, usize); 12] = [
    ("main theorem", 200),
    ("pullback UMP", 100),
    ("scott order", 50),
    ("parallel product", 50),
    ("strategy closure", 50),
    ("pentagon", 20),
    ("unit triangle", 20),
    ("unitor naturality", 20),
    ("compact closure", 20),
    ("hiding algebra", 30),
    ("copycat structure", 50),
    ("copycat witnesses", 30),
];

/// Every suite, with trial counts scaled so that the main theorem gets `trials`.
#[must_use]
pub fn standard(seed: u64, trials: usize, max_events: usize) -> Vec<LawReport> {
    let scaled = |k: usize| (STANDARD_COUNTS[k].1 * trials).div_ceil(200).max(1);
    vec![
        main_theorem(seed, scaled(0), max_events),
        pullback_universal_property(seed, scaled(1)),
        scott_order(seed, scaled(2), max_events.min(5)),
        product_law(seed, scaled(3)),
        strategy_closure(seed, scaled(4)),
        pentagons(seed, scaled(5)),
        triangles(seed, scaled(6)),
        unitor_naturality_suite(seed, scaled(7)),
        compact_closure(seed, scaled(8), max_events.min(3)),
        hiding_algebra(seed, scaled(9)),
        copycat_structure(seed, scaled(10)),
        copycat_witnesses(seed, scaled(11)),
    ]
}

//! Seeded generators. The same seed and flags always give the same value.

use esgame_core::algebra::{epsilon, eta, lift, par, tensor, StructuralIso};
use esgame_core::es::{ids, project_esp, RawStructure};
use esgame_core::games::copycat;
use esgame_core::interaction::compose;
use esgame_core::limits::Limits;
use esgame_core::{EsMap, Esp, EventSet, EventStructure, Polarity, PreStrategy, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

#[must_use]
pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EspFlags {
    pub edge_prob: f64,
    pub conflict_prob: f64,
    /// Chance that a triple of pairwise compatible events is jointly inconsistent.
    pub triple_prob: f64,
    /// Draw random polarities; otherwise every event is positive.
    pub polarity: bool,
}

impl Default for EspFlags {
    fn default() -> Self {
        Self {
            edge_prob: 0.3,
            conflict_prob: 0.2,
            triple_prob: 0.05,
            polarity: true,
        }
    }
}

/// A random esp over `e0 .. e{n-1}`; causality only runs upwards in index.
pub fn gen_esp(seed: u64, n: usize, flags: &EspFlags) -> Result<Esp> {
    Limits::current().check_events(n)?;
    Ok(random_esp(&mut rng(seed), n, flags, "e"))
}

pub fn random_esp(rng: &mut SeededRng, n: usize, flags: &EspFlags, prefix: &str) -> Esp {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut prec = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.random_bool(flags.edge_prob) {
                prec.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let plain = EventStructure::from_raw(&RawStructure {
        events: names.clone(),
        prec: prec.clone(),
        conflicts: vec![],
    })
    .expect("acyclic by construction");
    // Compatible and never jointly below one event, so a conflict is legal.
    let free = |a: usize, b: usize| !(0..n).any(|k| plain.leq(a, k) && plain.leq(b, k));
    let mut conflicts = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if free(i, j) && rng.random_bool(flags.conflict_prob) {
                conflicts.push(vec![names[i].clone(), names[j].clone()]);
            }
        }
    }
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                if free(i, j) && free(j, k) && free(i, k) && rng.random_bool(flags.triple_prob) {
                    conflicts.push(vec![names[i].clone(), names[j].clone(), names[k].clone()]);
                }
            }
        }
    }
    let structure = EventStructure::from_raw(&RawStructure {
        events: names,
        prec,
        conflicts,
    })
    .unwrap_or(plain);
    let pol = (0..n)
        .map(|_| {
            if !flags.polarity || rng.random_bool(0.5) {
                Polarity::Pos
            } else {
                Polarity::Neg
            }
        })
        .collect();
    Esp::new(structure, pol).expect("sizes agree")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreFlags {
    pub max_events: usize,
    /// Chance of an extra cause beyond the ones the game forces.
    pub extra_cause_prob: f64,
    pub conflict_prob: f64,
}

impl Default for PreFlags {
    fn default() -> Self {
        Self {
            max_events: 6,
            extra_cause_prob: 0.25,
            conflict_prob: 0.2,
        }
    }
}

/// A random pre-strategy on `game`, with carrier events `s0, s1, ..`.
///
/// Events are added one at a time above a random choice of events covering
/// the game causes of their label. Nothing forces negative moves to be
/// answered, so many results are not receptive.
pub fn gen_prestrategy(seed: u64, game: &Esp, flags: &PreFlags) -> Result<PreStrategy> {
    Limits::current().check_events(game.len())?;
    random_prestrategy(&mut rng(seed), game, flags)
}

pub fn random_prestrategy(
    rng: &mut SeededRng,
    game: &Esp,
    flags: &PreFlags,
) -> Result<PreStrategy> {
    for _ in 0..32 {
        if let Some(s) = attempt(rng, game, flags)? {
            return Ok(s);
        }
    }
    // The inclusion of a random down-closed part of the game.
    let picked: EventSet = (0..game.len()).filter(|_| rng.random_bool(0.5)).collect();
    let part = project_esp(game, &game.down_closure(&picked))?;
    PreStrategy::new(part.structure, game.clone(), part.embedding)
}

fn attempt(rng: &mut SeededRng, game: &Esp, flags: &PreFlags) -> Result<Option<PreStrategy>> {
    let target = if game.is_empty() {
        0
    } else {
        rng.random_range(0..=flags.max_events)
    };
    let mut label: Vec<usize> = Vec::new();
    let mut down: Vec<EventSet> = Vec::new();
    for _ in 0..4 * target {
        if label.len() == target {
            break;
        }
        let a = rng.random_range(0..game.len());
        let forced: Option<Vec<usize>> = game
            .immediate_causes(a)
            .iter()
            .map(|c| {
                let options: Vec<usize> = (0..label.len()).filter(|&s| label[s] == c).collect();
                (!options.is_empty()).then(|| options[rng.random_range(0..options.len())])
            })
            .collect();
        let Some(mut causes) = forced else { continue };
        causes.extend((0..label.len()).filter(|_| rng.random_bool(flags.extra_cause_prob)));
        let me = label.len();
        let mut d = EventSet::singleton(me);
        for &c in &causes {
            d.union_with(&down[c]);
        }
        let image: EventSet = d
            .iter()
            .map(|s| if s == me { a } else { label[s] })
            .collect();
        if image.len() != d.len() || !game.is_configuration(&image) {
            continue;
        }
        label.push(a);
        down.push(d);
    }
    let n = label.len();
    let below = |i: usize, j: usize| down[j].contains(i);
    let mut conflicts = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if below(i, j) || below(j, i) {
                continue;
            }
            let both = down[i].union(&down[j]);
            let image: EventSet = both.iter().map(|s| label[s]).collect();
            let clash = image.len() != both.len() || !game.is_consistent(&image);
            if clash || rng.random_bool(flags.conflict_prob) {
                conflicts.push(EventSet::from_iter([i, j]));
            }
        }
    }
    let names = ids((0..n)
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .iter()
        .map(String::as_str))?;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| down[j].iter().filter(move |&i| i != j).map(move |i| (i, j)))
        .collect();
    let Ok(structure) = EventStructure::build(names, &edges, &conflicts) else {
        return Ok(None);
    };
    let pol = label.iter().map(|&a| game.polarity(a)).collect();
    let inner = Esp::new(structure, pol)?;
    Ok(PreStrategy::new(inner, game.clone(), label).ok())
}

fn small_game(rng: &mut SeededRng, max: usize) -> Esp {
    let n = if max == 0 || rng.random_bool(0.1) {
        0
    } else {
        rng.random_range(1..=max)
    };
    random_esp(rng, n, &EspFlags::default(), "g")
}

fn renamed_copy(a: &Esp, tag: &str) -> Result<Esp> {
    let fresh: Vec<String> = a.ids().iter().map(|i| format!("{i}{tag}")).collect();
    a.renamed(ids(fresh.iter().map(String::as_str))?)
}

/// A receptive, courteous map out of `a`: a renaming, or the inclusion
/// into `a ∥ P` for a purely positive `P`.
fn rc_map(rng: &mut SeededRng, a: &Esp) -> Result<(Esp, EsMap)> {
    if rng.random_bool(0.5) {
        Ok((renamed_copy(a, "'")?, EsMap::identity(a.len())))
    } else {
        let n = rng.random_range(1..=2);
        let flags = EspFlags {
            polarity: false,
            ..EspFlags::default()
        };
        let p = random_esp(rng, n, &flags, "p");
        let b = par(a, &p);
        Ok((b.clone(), EsMap::total((0..a.len()).collect(), b.len())))
    }
}

fn structural(rng: &mut SeededRng, size: usize) -> Result<PreStrategy> {
    let part = size.div_ceil(2).max(1);
    let iso = match rng.random_range(0..4) {
        0 => StructuralIso::rho(&small_game(rng, size)),
        1 => StructuralIso::lambda(&small_game(rng, size)),
        2 => StructuralIso::swap(&small_game(rng, part), &small_game(rng, part)),
        _ => {
            let a = small_game(rng, 1);
            let b = small_game(rng, 1);
            let c = small_game(rng, 1);
            StructuralIso::alpha(&a, &b, &c)
        }
    };
    if rng.random_bool(0.5) {
        iso.inverse().lift()
    } else {
        iso.lift()
    }
}

fn leaf(rng: &mut SeededRng, size: usize) -> Result<PreStrategy> {
    match rng.random_range(0..5) {
        0 => copycat(&small_game(rng, size)),
        1 => {
            let a = small_game(rng, size.saturating_sub(1).max(1));
            let (b, f) = rc_map(rng, &a)?;
            lift(&a, &b, &f)
        }
        2 => structural(rng, size),
        3 => eta(&small_game(rng, size.div_ceil(2))),
        _ => epsilon(&small_game(rng, size.div_ceil(2))),
    }
}

/// Follow `σ : A ⊸ B` with a strategy out of `B`, or precede it with one into `A`.
fn extend(rng: &mut SeededRng, sigma: &PreStrategy) -> Result<PreStrategy> {
    let split = sigma.split().expect("family members carry a split").clone();
    let after = rng.random_bool(0.5);
    let other = if after {
        let b = &split.right;
        if rng.random_bool(0.4) {
            copycat(b)?
        } else {
            let (c, f) = rc_map(rng, b)?;
            lift(b, &c, &f)?
        }
    } else {
        let a = &split.left;
        if rng.random_bool(0.4) {
            copycat(a)?
        } else {
            let fresh = renamed_copy(a, "'")?;
            lift(&fresh, a, &EsMap::identity(a.len()))?
        }
    };
    let c = if after {
        compose(sigma, &other)?
    } else {
        compose(&other, sigma)?
    };
    Ok(c.strategy().clone())
}

/// A strategy from the family closed under strategy-hood: copycats,
/// liftings, structural isos, `η`, `ε`, tensors and compositions. Games
/// have at most `size` events.
pub fn gen_strategy_family(seed: u64, size: usize) -> Result<PreStrategy> {
    Limits::current().check_events(size)?;
    random_family(&mut rng(seed), size, 2)
}

pub fn random_family(rng: &mut SeededRng, size: usize, depth: usize) -> Result<PreStrategy> {
    if depth == 0 {
        return leaf(rng, size);
    }
    match rng.random_range(0..4) {
        0 => leaf(rng, size),
        1 => {
            let half = size.div_ceil(2).max(1);
            let s1 = random_family(rng, half, depth - 1)?;
            let s2 = random_family(rng, half, depth - 1)?;
            tensor(&s1, &s2)
        }
        _ => {
            let s = random_family(rng, size, depth - 1)?;
            extend(rng, &s)
        }
    }
}

/// A random strategy out of `b` from the family: copycat, a lifting, or
/// the composite of two liftings.
pub fn random_successor(rng: &mut SeededRng, b: &Esp) -> Result<PreStrategy> {
    Ok(match rng.random_range(0..3) {
        0 => copycat(b)?,
        1 => {
            let (c, f) = rc_map(rng, b)?;
            lift(b, &c, &f)?
        }
        _ => {
            let (c, f) = rc_map(rng, b)?;
            let first = lift(b, &c, &f)?;
            let (d, g) = rc_map(rng, &c)?;
            compose(&first, &lift(&c, &d, &g)?)?.strategy().clone()
        }
    })
}

/// A random composable pair `σ : A ⊸ B`, `τ : B ⊸ C` from the family.
pub fn random_family_pair(rng: &mut SeededRng, size: usize) -> Result<(PreStrategy, PreStrategy)> {
    let sigma = random_family(rng, size, 1)?;
    let b = sigma
        .split()
        .expect("family members carry a split")
        .right
        .clone();
    let tau = random_successor(rng, &b)?;
    Ok((sigma, tau))
}

/// `len` composable family members, each starting where the previous one ends.
pub fn random_family_chain(
    rng: &mut SeededRng,
    size: usize,
    len: usize,
) -> Result<Vec<PreStrategy>> {
    let mut chain = vec![random_family(rng, size, 1)?];
    while chain.len() < len {
        let b = chain
            .last()
            .and_then(PreStrategy::split)
            .expect("family members carry a split")
            .right
            .clone();
        // Renamings and copycats keep the later games small.
        let next = if b.len() <= 2 && rng.random_bool(0.5) {
            random_successor(rng, &b)?
        } else if rng.random_bool(0.5) {
            copycat(&b)?
        } else {
            let fresh = renamed_copy(&b, "'")?;
            lift(&b, &fresh, &EsMap::identity(b.len()))?
        };
        chain.push(next);
    }
    Ok(chain)
}

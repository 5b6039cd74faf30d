//! Receptivity, courtesy, discrete fibrations, strategies and the unitors.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::es::{EsMap, Esp, Polarity, PreStrategy};
use crate::games::{copycat, scott_witness};
use crate::interaction::{compose, minimal_witness, CompositionResult, Elem};
use crate::set::EventSet;

/// Outcome of a law check: `None` when the law holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<C> {
    pub counterexample: Option<C>,
}

impl<C> Verdict<C> {
    fn from(counterexample: Option<C>) -> Self {
        Self { counterexample }
    }

    #[must_use]
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A negative game move enabled at `σx` with zero or several answers in `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceptivityFailure {
    pub x: EventSet,
    pub move_: usize,
    pub answers: Vec<usize>,
}

/// `σ` is receptive: every negative `a` with `σx —⊂a` has exactly one `s`
/// with `x —⊂s` and `σs = a`. Reports the least `(x, a)` in canonical order.
pub fn is_receptive(sigma: &PreStrategy) -> Result<Verdict<ReceptivityFailure>> {
    let (s, a) = (sigma.inner(), sigma.game());
    let mut moves: Vec<usize> = (0..a.len()).filter(|&m| a.is_negative(m)).collect();
    moves.sort_by(|&p, &q| a.id(p).cmp(a.id(q)));
    for x in s.configurations()?.iter() {
        let image = sigma.image(x);
        for &m in &moves {
            if !a.extends(&image, m) {
                continue;
            }
            let answers: Vec<usize> = s.enabled(x).filter(|&e| sigma.label()[e] == m).collect();
            if answers.len() != 1 {
                return Ok(Verdict::from(Some(ReceptivityFailure {
                    x: x.clone(),
                    move_: m,
                    answers,
                })));
            }
        }
    }
    Ok(Verdict::from(None))
}

/// `σ` is courteous: every `s ⇢ s'` not of shape `− ⇢ +` is sent to `σs ⇢ σs'`.
/// Reports the first offending edge.
pub fn is_courteous(sigma: &PreStrategy) -> Verdict<(usize, usize)> {
    let (s, a) = (sigma.inner(), sigma.game());
    let bad = s.immediate_edges().into_iter().find(|&(p, q)| {
        let free = s.polarity(p) == Polarity::Neg && s.polarity(q) == Polarity::Pos;
        !free && !a.is_immediate(sigma.label()[p], sigma.label()[q])
    });
    Verdict::from(bad)
}

/// The order on configurations a fibration is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibrationOrder {
    /// `y ≤ x` iff `y ⊇⁻ x`.
    Neg,
    /// `y ≤ x` iff `y ⊆⁺ x`.
    Pos,
    /// The Scott order.
    Scott,
}

impl fmt::Display for FibrationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibrationOrder::Neg => "neg",
            FibrationOrder::Pos => "pos",
            FibrationOrder::Scott => "scott",
        })
    }
}

impl std::str::FromStr for FibrationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "neg" => Ok(Self::Neg),
            "pos" => Ok(Self::Pos),
            "scott" => Ok(Self::Scott),
            other => Err(Error::Precondition(format!(
                "unknown fibration variant `{other}`"
            ))),
        }
    }
}

fn below(a: &Esp, order: FibrationOrder, y: &EventSet, x: &EventSet) -> bool {
    match order {
        FibrationOrder::Neg => x.is_subset(y) && y.difference(x).iter().all(|e| a.is_negative(e)),
        FibrationOrder::Pos => y.is_subset(x) && x.difference(y).iter().all(|e| a.is_positive(e)),
        FibrationOrder::Scott => scott_witness(a, y, x).is_some(),
    }
}

/// Failure of the fibration property at `(x, y)`, with the matching lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationFailure {
    pub x: EventSet,
    pub y: EventSet,
    pub lifts: Vec<EventSet>,
}

/// `σ : (𝒞(S), ≤) → (𝒞(A), ≤)` is a discrete fibration: every `y ≤ σx`
/// has exactly one `x' ≤ x` with `σx' = y`. Exhaustive.
pub fn is_discrete_fibration(
    sigma: &PreStrategy,
    order: FibrationOrder,
) -> Result<Verdict<FibrationFailure>> {
    let (s, a) = (sigma.inner(), sigma.game());
    let s_configs = s.configurations()?;
    let a_configs = a.configurations()?;
    let mut by_image: HashMap<EventSet, Vec<&EventSet>> = HashMap::new();
    for x in s_configs.iter() {
        by_image.entry(sigma.image(x)).or_default().push(x);
    }
    for x in s_configs.iter() {
        let fx = sigma.image(x);
        for y in a_configs.iter().filter(|y| below(a, order, y, &fx)) {
            let lifts: Vec<EventSet> = by_image
                .get(y)
                .map(|c| {
                    c.iter()
                        .filter(|x2| below(s, order, x2, x))
                        .map(|x2| (*x2).clone())
                        .collect()
                })
                .unwrap_or_default();
            if lifts.len() != 1 {
                return Ok(Verdict::from(Some(FibrationFailure {
                    x: x.clone(),
                    y: y.clone(),
                    lifts,
                })));
            }
        }
    }
    Ok(Verdict::from(None))
}

/// `σ` is a strategy: `cc_A ⊙ σ ≅ σ` over `A`. Returns some isomorphism
/// from the composite to `σ`.
pub fn is_strategy(sigma: &PreStrategy) -> Result<Option<Vec<usize>>> {
    let arrow = sigma.as_arrow();
    let cc = copycat(sigma.game())?;
    let c = compose(&arrow, &cc)?;
    c.strategy().isomorphism(&arrow)
}

/// Every law at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyVerdict {
    pub receptive: Verdict<ReceptivityFailure>,
    pub courteous: Verdict<(usize, usize)>,
    pub fibration: Vec<(FibrationOrder, Verdict<FibrationFailure>)>,
    pub copycat_iso: Option<Vec<usize>>,
}

impl StrategyVerdict {
    /// The four characterisations agree.
    #[must_use]
    pub fn consistent(&self) -> bool {
        let rc = self.receptive.holds() && self.courteous.holds();
        let get = |o| {
            self.fibration
                .iter()
                .find(|(k, _)| *k == o)
                .is_some_and(|(_, v)| v.holds())
        };
        let scott = get(FibrationOrder::Scott);
        let both = get(FibrationOrder::Neg) && get(FibrationOrder::Pos);
        rc == scott && scott == both && both == self.copycat_iso.is_some()
    }
}

pub fn check_strategy(sigma: &PreStrategy) -> Result<StrategyVerdict> {
    let fibration = [
        FibrationOrder::Neg,
        FibrationOrder::Pos,
        FibrationOrder::Scott,
    ]
    .into_iter()
    .map(|o| Ok((o, is_discrete_fibration(sigma, o)?)))
    .collect::<Result<Vec<_>>>()?;
    Ok(StrategyVerdict {
        receptive: is_receptive(sigma)?,
        courteous: is_courteous(sigma),
        fibration,
        copycat_iso: is_strategy(sigma)?,
    })
}

/// `[x⁺]`: drop the negative events of `x` that nothing positive in `x` depends on.
pub fn strip_negatives(sigma: &PreStrategy, x: &EventSet) -> Result<EventSet> {
    let s = sigma.inner();
    if !s.is_configuration(x) {
        return Err(Error::Precondition(format!(
            "{} is not a configuration",
            s.show(x)
        )));
    }
    Ok(s.down_closure(&s.with_polarity(x, Polarity::Pos)))
}

/// The unique `x' ⊑ x` with `σx' = y`, for `y ⊑ σx` and a receptive,
/// courteous `σ`. Positives of `x` outside `y` are dropped, then the
/// missing negatives of `y` are answered one covering step at a time.
pub fn fibration_lift(sigma: &PreStrategy, x: &EventSet, y: &EventSet) -> Result<EventSet> {
    let (s, a) = (sigma.inner(), sigma.game());
    if !s.is_configuration(x) || !a.is_configuration(y) {
        return Err(Error::Precondition("lift needs configurations".into()));
    }
    let fx = sigma.image(x);
    let Some(w) = scott_witness(a, y, &fx) else {
        return Err(Error::Precondition(format!(
            "{} is not below {} in the Scott order",
            a.show(y),
            a.show(&fx)
        )));
    };
    let mut lifted: EventSet = x.iter().filter(|&e| w.contains(sigma.label()[e])).collect();
    if !s.is_configuration(&lifted) {
        return Err(Error::Precondition(
            "dropping positives leaves no configuration".into(),
        ));
    }
    let mut image = w;
    let mut missing = y.difference(&image);
    loop {
        let next = missing.iter().find(|&m| a.extends(&image, m));
        let Some(m) = next else { break };
        let answers: Vec<usize> = s
            .enabled(&lifted)
            .filter(|&e| sigma.label()[e] == m)
            .collect();
        let [e] = answers[..] else {
            return Err(Error::Precondition(format!(
                "{} has {} answers",
                a.id(m),
                answers.len()
            )));
        };
        lifted.insert(e);
        image.insert(m);
        missing.remove(m);
    }
    if !missing.is_empty() {
        return Err(Error::Precondition(
            "negative moves could not be replayed".into(),
        ));
    }
    Ok(lifted)
}

/// Turn a configuration-level iso `L` into an event map with
/// `φ(e) = L([e]) \ L([e))`.
fn events_from_configurations(
    source: &crate::es::EventStructure,
    target_len: usize,
    l: impl Fn(&EventSet) -> Result<EventSet>,
) -> Result<EsMap> {
    let image = (0..source.len())
        .map(|e| {
            let full = l(source.below(e))?;
            let strict = l(&source.below(e).without(e))?;
            let diff = full.difference(&strict);
            match (strict.is_subset(&full), diff.first()) {
                (true, Some(t)) if diff.len() == 1 => Ok(t),
                _ => Err(Error::Precondition(format!(
                    "configuration map is not an iso at {}",
                    source.id(e)
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EsMap::total(image, target_len))
}

/// Whether `table` is an isomorphism `source.inner → target.inner` over the game.
pub fn is_strategy_iso(
    source: &PreStrategy,
    target: &PreStrategy,
    table: &[usize],
) -> Result<bool> {
    let (s, t) = (source.inner(), target.inner());
    if table.len() != s.len() || s.len() != t.len() {
        return Ok(false);
    }
    if table.iter().copied().collect::<EventSet>().len() != t.len()
        || table.iter().any(|&e| e >= t.len())
    {
        return Ok(false);
    }
    let translate = crate::es::game_translation(source.game(), target.game())?;
    let map = |x: &EventSet| -> EventSet { x.iter().map(|e| table[e]).collect() };
    let events_ok = (0..s.len()).all(|e| {
        let f = table[e];
        translate[source.label()[e]] == target.label()[f]
            && s.polarity(e) == t.polarity(f)
            && map(s.below(e)) == *t.below(f)
    });
    let mut gs: Vec<EventSet> = s.generators().iter().map(map).collect();
    let mut gt: Vec<EventSet> = t.generators().to_vec();
    gs.sort();
    gt.sort();
    Ok(events_ok && gs == gt)
}

fn unitor(
    sigma: &PreStrategy,
    c: &CompositionResult,
    side: fn(Elem) -> Option<usize>,
    left: bool,
) -> Result<EsMap> {
    let composite = c.strategy();
    let interaction = &c.interaction;
    let l = |z: &EventSet| -> Result<EventSet> {
        let w = minimal_witness(c, z)?;
        let x: EventSet = w
            .iter()
            .filter_map(|e| {
                side(if left {
                    interaction.left_elem(e)
                } else {
                    interaction.right_elem(e)
                })
            })
            .collect();
        fibration_lift(sigma, &x, &composite.image(z))
    };
    let phi = events_from_configurations(composite.inner(), sigma.inner().len(), l)?;
    if !is_strategy_iso(composite, sigma, &phi.values())? {
        return Err(Error::Precondition(
            "unitor is not an isomorphism of strategies".into(),
        ));
    }
    Ok(phi)
}

fn inner(el: Elem) -> Option<usize> {
    match el {
        Elem::Inner(i) => Some(i),
        Elem::Pad(..) => None,
    }
}

/// `λ_σ : CC_B ⊙ S → S` with the composite it starts from.
pub fn left_unitor(sigma: &PreStrategy) -> Result<(CompositionResult, EsMap)> {
    let split = sigma
        .split()
        .ok_or_else(|| Error::Precondition("unitor needs A ⊸ B".into()))?;
    let c = compose(sigma, &copycat(&split.right)?)?;
    let phi = unitor(sigma, &c, inner, true)?;
    Ok((c, phi))
}

/// `ρ_σ : S ⊙ CC_A → S` with the composite it starts from.
pub fn right_unitor(sigma: &PreStrategy) -> Result<(CompositionResult, EsMap)> {
    let split = sigma
        .split()
        .ok_or_else(|| Error::Precondition("unitor needs A ⊸ B".into()))?;
    let c = compose(&copycat(&split.left)?, sigma)?;
    let phi = unitor(sigma, &c, inner, false)?;
    Ok((c, phi))
}

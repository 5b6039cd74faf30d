//! Interaction `T ⊛ S`, hiding and composition `T ⊙ S`.
//!
//! Both factors are presented as [`Open`] structures: an event structure
//! labelled in a list of games. A strategy `A ⊸ B` has the parts
//! `[A⊥, B]`; the interaction of `S` with parts `[P1, .., Pk]` and `T`
//! with parts `[Q1, .., Qm]` (where `Q1 = Pk⊥`) has the parts
//! `[P1, .., Pk, Q2, .., Qm]`, the shared game being `Pk`.

mod pullback;
#[cfg(test)]
mod tests;

pub use pullback::{covering_sequence, is_secured, Pullback};

use crate::error::{Error, Result};
use crate::es::{
    game_translation, parallel_tagged, project, EsMap, Esp, EventStructure, PreStrategy, Side,
    Split,
};
use crate::set::EventSet;

/// An event structure labelled in a sequence of games, by `(part, index)`.
#[derive(Debug, Clone)]
pub struct Open {
    pub structure: EventStructure,
    pub parts: Vec<Esp>,
    pub label: Vec<(usize, usize)>,
}

impl Open {
    pub fn new(
        structure: EventStructure,
        parts: Vec<Esp>,
        label: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if label.len() != structure.len()
            || label
                .iter()
                .any(|&(c, i)| c >= parts.len() || i >= parts[c].len())
        {
            return Err(Error::Mismatch("labels must point into the parts".into()));
        }
        Ok(Self {
            structure,
            parts,
            label,
        })
    }

    /// `[A⊥, B]` for a strategy `A ⊸ B`.
    pub fn from_strategy(sigma: &PreStrategy) -> Result<Self> {
        let split = sigma
            .split()
            .ok_or_else(|| Error::Precondition("strategy has no A⊥ ∥ B presentation".into()))?;
        let label = sigma
            .label()
            .iter()
            .map(|&g| match split.side(g) {
                Side::Left(a) => (0, a),
                Side::Right(b) => (1, b),
            })
            .collect();
        Ok(Self {
            structure: sigma.inner().structure().clone(),
            parts: vec![split.left.dual(), split.right.clone()],
            label,
        })
    }

    fn offsets(&self) -> Vec<usize> {
        offsets(&self.parts)
    }
}

fn offsets(parts: &[Esp]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    out.push(0);
    for p in parts {
        acc += p.len();
        out.push(acc);
    }
    out
}

/// An element of one side of an interaction: an event of the factor, or
/// a game event padded in on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elem {
    Inner(usize),
    Pad(usize, usize),
}

/// `T ⊛ S`: the pullback of `σ ∥ Q2..Qm` and `P1..Pk-1 ∥ τ`.
#[derive(Debug, Clone)]
pub struct Interaction {
    pub open: Open,
    pub pullback: Pullback,
    /// Part index of the shared game.
    pub shared: usize,
    left_elems: Vec<Elem>,
    right_elems: Vec<Elem>,
}

impl Interaction {
    #[must_use]
    pub fn structure(&self) -> &EventStructure {
        &self.open.structure
    }

    /// Left element of the top pair of `e`.
    #[must_use]
    pub fn left_elem(&self, e: usize) -> Elem {
        self.left_elems[self.pullback.pi1.at(e)]
    }

    #[must_use]
    pub fn right_elem(&self, e: usize) -> Elem {
        self.right_elems[self.pullback.pi2.at(e)]
    }

    /// Index of an element on the left side, if it is there.
    #[must_use]
    pub fn left_index(&self, el: Elem) -> Option<usize> {
        self.left_elems.iter().position(|&x| x == el)
    }

    #[must_use]
    pub fn right_index(&self, el: Elem) -> Option<usize> {
        self.right_elems.iter().position(|&x| x == el)
    }

    /// The partial projection to the left factor.
    #[must_use]
    pub fn left_projection(&self) -> EsMap {
        let n = self
            .left_elems
            .iter()
            .filter(|e| matches!(e, Elem::Inner(_)))
            .count();
        let image = (0..self.structure().len())
            .map(|e| match self.left_elem(e) {
                Elem::Inner(i) => Some(i),
                Elem::Pad(..) => None,
            })
            .collect();
        EsMap::new(image, n)
    }

    #[must_use]
    pub fn right_projection(&self) -> EsMap {
        let n = self
            .right_elems
            .iter()
            .filter(|e| matches!(e, Elem::Inner(_)))
            .count();
        let image = (0..self.structure().len())
            .map(|e| match self.right_elem(e) {
                Elem::Inner(i) => Some(i),
                Elem::Pad(..) => None,
            })
            .collect();
        EsMap::new(image, n)
    }

    /// Events labelled outside the shared game.
    #[must_use]
    pub fn visible(&self) -> EventSet {
        (0..self.structure().len())
            .filter(|&e| self.open.label[e].0 != self.shared)
            .collect()
    }

    /// Labelling into the flattened game `P1 ∥ .. ∥ Qm`.
    #[must_use]
    pub fn flat_label(&self) -> Vec<usize> {
        let off = self.open.offsets();
        self.open.label.iter().map(|&(c, i)| off[c] + i).collect()
    }

    /// The flattened game, components prefixed by their position.
    #[must_use]
    pub fn flat_game(&self) -> Esp {
        let names: Vec<String> = (0..self.open.parts.len()).map(|i| i.to_string()).collect();
        let parts: Vec<(&str, &Esp)> = names
            .iter()
            .map(String::as_str)
            .zip(&self.open.parts)
            .collect();
        Esp::tagged(&parts)
    }
}

/// Interaction of two open structures whose facing games are dual.
pub fn interact(left: &Open, right: &Open) -> Result<Interaction> {
    let (k, m) = (left.parts.len(), right.parts.len());
    if k == 0 || m == 0 {
        return Err(Error::Precondition(
            "interaction needs a shared game".into(),
        ));
    }
    if left.parts[k - 1] != right.parts[0].dual() {
        return Err(Error::Mismatch("the shared games are not dual".into()));
    }
    let parts: Vec<Esp> = left
        .parts
        .iter()
        .chain(&right.parts[1..])
        .cloned()
        .collect();
    let off = offsets(&parts);
    let flat = |c: usize, i: usize| off[c] + i;

    let pad_names: Vec<String> = (0..parts.len()).map(|c| format!("g{c}")).collect();
    let mut l_parts: Vec<(&str, &EventStructure)> = vec![("0", &left.structure)];
    let mut left_elems: Vec<Elem> = (0..left.structure.len()).map(Elem::Inner).collect();
    let mut sigma: Vec<usize> = left.label.iter().map(|&(c, i)| flat(c, i)).collect();
    for c in k..parts.len() {
        l_parts.push((&pad_names[c], parts[c].structure()));
        left_elems.extend((0..parts[c].len()).map(|i| Elem::Pad(c, i)));
        sigma.extend((0..parts[c].len()).map(|i| flat(c, i)));
    }
    let mut r_parts: Vec<(&str, &EventStructure)> = Vec::new();
    let mut right_elems = Vec::new();
    let mut tau = Vec::new();
    for (c, part) in parts.iter().enumerate().take(k - 1) {
        r_parts.push((&pad_names[c], part.structure()));
        right_elems.extend((0..part.len()).map(|i| Elem::Pad(c, i)));
        tau.extend((0..part.len()).map(|i| flat(c, i)));
    }
    r_parts.push(("1", &right.structure));
    right_elems.extend((0..right.structure.len()).map(Elem::Inner));
    // The shared game may be indexed differently on the two sides.
    let shared = game_translation(&right.parts[0], &left.parts[k - 1].dual())?;
    tau.extend(right.label.iter().map(|&(c, i)| {
        if c == 0 {
            flat(k - 1, shared[i])
        } else {
            flat(c + k - 1, i)
        }
    }));

    let l_struct = parallel_tagged(&l_parts);
    let r_struct = parallel_tagged(&r_parts);
    let total = off[parts.len()];
    let sigma_map = EsMap::total(sigma, total);
    let pullback = Pullback::new(&l_struct, &sigma_map, &r_struct, &EsMap::total(tau, total))?;
    let unflat = |g: usize| {
        let c = off.partition_point(|&o| o <= g) - 1;
        (c, g - off[c])
    };
    let label = (0..pullback.structure.len())
        .map(|e| unflat(sigma_map.at(pullback.pi1.at(e))))
        .collect();
    let open = Open {
        structure: pullback.structure.clone(),
        parts,
        label,
    };
    Ok(Interaction {
        open,
        pullback,
        shared: k - 1,
        left_elems,
        right_elems,
    })
}

/// `T ⊛ S` for strategies `σ : A ⊸ B` and `τ : B ⊸ C`.
pub fn interaction(sigma: &PreStrategy, tau: &PreStrategy) -> Result<Interaction> {
    interact(&Open::from_strategy(sigma)?, &Open::from_strategy(tau)?)
}

/// `T ⊙ S` with the interaction it hides.
#[derive(Debug, Clone)]
pub struct CompositionResult {
    pub interaction: Interaction,
    /// Visible part, labelled in the parts other than the shared one.
    pub open: Open,
    /// `T ⊛ S ⇀ T ⊙ S`.
    pub hiding: EsMap,
    /// Event of the interaction behind each visible event.
    pub embedding: Vec<usize>,
    /// The composite as a strategy, when both factors were strategies.
    pub strategy: Option<PreStrategy>,
}

/// Hide the shared game of an interaction of open structures.
pub fn compose_open(left: &Open, right: &Open) -> Result<CompositionResult> {
    let interaction = interact(left, right)?;
    let p = project(interaction.structure(), &interaction.visible())?;
    let shared = interaction.shared;
    let label = p
        .embedding
        .iter()
        .map(|&e| {
            let (c, i) = interaction.open.label[e];
            (if c > shared { c - 1 } else { c }, i)
        })
        .collect();
    let mut parts = interaction.open.parts.clone();
    parts.remove(shared);
    let open = Open {
        structure: p.structure,
        parts,
        label,
    };
    Ok(CompositionResult {
        interaction,
        open,
        hiding: p.hiding,
        embedding: p.embedding,
        strategy: None,
    })
}

/// `τ ⊙ σ : T ⊙ S → A⊥ ∥ C` for `σ : A ⊸ B`, `τ : B ⊸ C`. Polarities of
/// the visible events are those of the outer games.
pub fn compose(sigma: &PreStrategy, tau: &PreStrategy) -> Result<CompositionResult> {
    let mut c = compose_open(&Open::from_strategy(sigma)?, &Open::from_strategy(tau)?)?;
    let split = Split::new(
        sigma.split().expect("checked").left.clone(),
        tau.split().expect("checked").right.clone(),
    );
    let pol = c
        .open
        .label
        .iter()
        .map(|&(p, i)| c.open.parts[p].polarity(i))
        .collect();
    let inner = Esp::new(c.open.structure.clone(), pol)?;
    let label = c
        .open
        .label
        .iter()
        .map(|&(p, i)| if p == 0 { split.l(i) } else { split.r(i) })
        .collect();
    c.strategy = Some(PreStrategy::trusted(
        inner,
        split.game(),
        label,
        Some(split),
    ));
    Ok(c)
}

impl CompositionResult {
    /// The composite strategy; set by [`compose`].
    #[must_use]
    pub fn strategy(&self) -> &PreStrategy {
        self.strategy.as_ref().expect("composite of strategies")
    }
}

/// `[z]` in `T ⊛ S` for a configuration `z` of `T ⊙ S`.
pub fn minimal_witness(c: &CompositionResult, z: &EventSet) -> Result<EventSet> {
    if !c.open.structure.is_configuration(z) {
        return Err(Error::Precondition(format!(
            "{} is not a configuration",
            c.open.structure.show(z)
        )));
    }
    let lifted: EventSet = z.iter().map(|e| c.embedding[e]).collect();
    Ok(c.interaction.structure().down_closure(&lifted))
}

/// The map `X ⇀ Y` between interactions induced by partial maps on the
/// factors and a map on parts: a padded game event goes to the same event
/// of the image part.
///
/// `parts[c]` is the part of `Y` receiving part `c` of `X`, if any.
pub fn interaction_map(
    src: &Interaction,
    dst: &Interaction,
    left: &EsMap,
    right: &EsMap,
    parts: &[Option<usize>],
) -> Result<EsMap> {
    if parts.len() != src.open.parts.len() {
        return Err(Error::Mismatch("one target part per source part".into()));
    }
    for (c, target) in parts.iter().enumerate() {
        if let Some(d) = *target {
            if d >= dst.open.parts.len() || src.open.parts[c] != dst.open.parts[d] {
                return Err(Error::Mismatch(format!("part {c} does not match part {d}")));
            }
        }
    }
    let lift =
        |el: Elem, inner: &EsMap, side: &dyn Fn(Elem) -> Option<usize>| -> Result<Option<usize>> {
            let image = match el {
                Elem::Inner(i) => inner.get(i).map(Elem::Inner),
                Elem::Pad(c, i) => parts[c].map(|d| Elem::Pad(d, i)),
            };
            match image {
                None => Ok(None),
                Some(t) => side(t)
                    .map(Some)
                    .ok_or_else(|| Error::Mismatch(format!("{t:?} has no place in the target"))),
            }
        };
    let n = src.structure().len();
    let alpha = (0..n)
        .map(|e| lift(src.left_elem(e), left, &|t| dst.left_index(t)))
        .collect::<Result<Vec<_>>>()?;
    let beta = (0..n)
        .map(|e| lift(src.right_elem(e), right, &|t| dst.right_index(t)))
        .collect::<Result<Vec<_>>>()?;
    dst.pullback.mediate(
        src.structure(),
        &EsMap::new(alpha, dst.pullback.left().len()),
        &EsMap::new(beta, dst.pullback.right().len()),
    )
}

/// Zipping: hidings of the factors give a hiding of interactions. Hidden
/// parts of the factors are dropped from the part list.
pub fn zipped_hiding(
    src: &Interaction,
    dst: &Interaction,
    left: &EsMap,
    right: &EsMap,
    parts: &[Option<usize>],
) -> Result<EsMap> {
    interaction_map(src, dst, left, right, parts)
}

/// Composition-level map `T ⊙ S → T' ⊙ S'` from an interaction map that
/// preserves visibility.
pub fn visible_map(
    src: &CompositionResult,
    dst: &CompositionResult,
    on_interaction: &EsMap,
) -> Result<EsMap> {
    let image =
        src.embedding
            .iter()
            .map(|&e| match on_interaction.get(e) {
                Some(t) => dst.hiding.get(t).map(Some).ok_or_else(|| {
                    Error::Mismatch("a visible event is sent to a hidden one".into())
                }),
                None => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
    Ok(EsMap::new(image, dst.embedding.len()))
}

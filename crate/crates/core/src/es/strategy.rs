//! Pre-strategies: polarity-preserving maps from an esp into a game.

use super::{check_map, find_isomorphisms, EsMap, Esp, IsoQuery, MapVerdict};
use crate::error::{Error, Result};
use crate::set::EventSet;

/// The two sides of a strategy `A ⊸ B`, whose game is `A⊥ ∥ B` with prefixes
/// `L.` and `R.`. The left side is stored undualised, as `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub left: Esp,
    pub right: Esp,
}

impl Split {
    #[must_use]
    pub fn new(left: Esp, right: Esp) -> Self {
        Self { left, right }
    }

    /// `A⊥ ∥ B`, left block first.
    #[must_use]
    pub fn game(&self) -> Esp {
        Esp::tagged(&[("L", &self.left.dual()), ("R", &self.right)])
    }

    /// Game index of a left event.
    #[must_use]
    pub fn l(&self, a: usize) -> usize {
        a
    }

    /// Game index of a right event.
    #[must_use]
    pub fn r(&self, b: usize) -> usize {
        self.left.len() + b
    }

    /// Which side a game index lies on, with its index there.
    #[must_use]
    pub fn side(&self, g: usize) -> Side {
        if g < self.left.len() {
            Side::Left(g)
        } else {
            Side::Right(g - self.left.len())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left(usize),
    Right(usize),
}

/// An esp `S` labelled in a game `A` by a total polarity-preserving map.
#[derive(Debug, Clone)]
pub struct PreStrategy {
    inner: Esp,
    game: Esp,
    label: Vec<usize>,
    split: Option<Split>,
}

impl PreStrategy {
    /// Checks the labelling with [`check_map`].
    pub fn new(inner: Esp, game: Esp, label: Vec<usize>) -> Result<Self> {
        let s = Self::trusted(inner, game, label, None);
        s.verify()?;
        Ok(s)
    }

    /// A strategy `A ⊸ B`; `label` points into `A⊥ ∥ B` as built by [`Split::game`].
    pub fn between(inner: Esp, split: Split, label: Vec<usize>) -> Result<Self> {
        let game = split.game();
        let s = Self::trusted(inner, game, label, Some(split));
        s.verify()?;
        Ok(s)
    }

    /// No map check; for constructions whose output is a pre-strategy by design.
    pub(crate) fn trusted(inner: Esp, game: Esp, label: Vec<usize>, split: Option<Split>) -> Self {
        debug_assert_eq!(inner.len(), label.len());
        Self {
            inner,
            game,
            label,
            split,
        }
    }

    fn verify(&self) -> Result<()> {
        if self.label.len() != self.inner.len() || self.label.iter().any(|&g| g >= self.game.len())
        {
            return Err(Error::NotAMap(
                "labelling must send every event into the game".into(),
            ));
        }
        let f = self.labelling();
        match check_map(
            &self.inner,
            &self.game,
            &f,
            Some((self.inner.polarities(), self.game.polarities())),
        )? {
            MapVerdict::NotAMap(why) => Err(Error::NotAMap(why)),
            _ => Ok(()),
        }
    }

    #[must_use]
    pub fn inner(&self) -> &Esp {
        &self.inner
    }

    #[must_use]
    pub fn game(&self) -> &Esp {
        &self.game
    }

    #[must_use]
    pub fn label(&self) -> &[usize] {
        &self.label
    }

    #[must_use]
    pub fn labelling(&self) -> EsMap {
        EsMap::total(self.label.clone(), self.game.len())
    }

    #[must_use]
    pub fn split(&self) -> Option<&Split> {
        self.split.as_ref()
    }

    /// View as a strategy `1 ⊸ A` on the whole game.
    #[must_use]
    pub fn as_arrow(&self) -> PreStrategy {
        let split = Split::new(Esp::empty(), self.game.clone());
        let game = split.game();
        let label = self.label.iter().map(|&g| split.r(g)).collect();
        Self::trusted(self.inner.clone(), game, label, Some(split))
    }

    /// The same labelling with the split forgotten.
    #[must_use]
    pub fn forget_split(&self) -> PreStrategy {
        Self::trusted(
            self.inner.clone(),
            self.game.clone(),
            self.label.clone(),
            None,
        )
    }

    /// Image of a set of inner events.
    #[must_use]
    pub fn image(&self, x: &EventSet) -> EventSet {
        x.iter().map(|e| self.label[e]).collect()
    }

    /// All isomorphisms `self.inner → other.inner` commuting with the
    /// labellings. The games must be equal; their index orders may differ.
    pub fn isomorphisms(&self, other: &PreStrategy, limit: usize) -> Result<Vec<Vec<usize>>> {
        let translate = game_translation(&self.game, &other.game)?;
        let mine: Vec<usize> = self.label.iter().map(|&g| translate[g]).collect();
        let q = IsoQuery::new(&self.inner, &other.inner)
            .polarities(self.inner.polarities(), other.inner.polarities())
            .over(&mine, &other.label)
            .limit(limit);
        Ok(find_isomorphisms(&q))
    }

    /// Some isomorphism of pre-strategies, if one exists.
    pub fn isomorphism(&self, other: &PreStrategy) -> Result<Option<Vec<usize>>> {
        Ok(self.isomorphisms(other, 1)?.into_iter().next())
    }

    /// Same pre-strategy with inner events renamed.
    pub fn renamed(&self, ids: Vec<super::EventId>) -> Result<PreStrategy> {
        Ok(Self::trusted(
            self.inner.renamed(ids)?,
            self.game.clone(),
            self.label.clone(),
            self.split.clone(),
        ))
    }

    /// Same labelling with a different split of the same game.
    pub fn with_split(&self, split: Split) -> Result<PreStrategy> {
        let game = split.game();
        let translate = game_translation(&self.game, &game)?;
        let label = self.label.iter().map(|&g| translate[g]).collect();
        Ok(Self::trusted(self.inner.clone(), game, label, Some(split)))
    }
}

/// Index translation between two equal games, by event id.
pub fn game_translation(from: &Esp, to: &Esp) -> Result<Vec<usize>> {
    if from != to {
        return Err(Error::Mismatch("games differ".into()));
    }
    (0..from.len()).map(|g| to.lookup(from.id(g))).collect()
}

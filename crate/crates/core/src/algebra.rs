//! The compact-closed structure: tensor, lifting, structural isos,
//! associators, coherence, `η`/`ε` and the snake equations.
//!
//! Parallel games use the prefixes `0.` and `1.`; `(A ∥ B) ∥ C` has ids
//! like `0.1.b`. Maps between composites are plain event functions, so
//! every coherence law is checked as an equality of index tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::es::{check_map, EsMap, Esp, EventStructure, MapVerdict, PreStrategy, Side, Split};
use crate::games::copycat;
use crate::interaction::{
    compose, interact, interaction_map, visible_map, CompositionResult, Elem, Open,
};
use crate::laws::{is_courteous, is_receptive, is_strategy_iso, left_unitor, right_unitor};
use crate::set::EventSet;

/// `A ∥ B` with prefixes `0.` and `1.`.
#[must_use]
pub fn par(a: &Esp, b: &Esp) -> Esp {
    Esp::tagged(&[("0", a), ("1", b)])
}

fn split_of(sigma: &PreStrategy) -> Result<&Split> {
    sigma
        .split()
        .ok_or_else(|| Error::Precondition("expected a strategy A ⊸ B".into()))
}

/// `σ₁ ⊗ σ₂ : A₁ ∥ A₂ ⊸ B₁ ∥ B₂`, the parallel composition relabelled
/// through the interleaving `γ`.
pub fn tensor(s1: &PreStrategy, s2: &PreStrategy) -> Result<PreStrategy> {
    let (p1, p2) = (split_of(s1)?, split_of(s2)?);
    let split = Split::new(par(&p1.left, &p2.left), par(&p1.right, &p2.right));
    let inner = par(s1.inner(), s2.inner());
    let mut label = Vec::with_capacity(inner.len());
    for (k, (s, p)) in [(s1, p1), (s2, p2)].into_iter().enumerate() {
        let (lo, ro) = if k == 0 {
            (0, 0)
        } else {
            (p1.left.len(), p1.right.len())
        };
        label.extend(s.label().iter().map(|&g| match p.side(g) {
            Side::Left(a) => split.l(lo + a),
            Side::Right(b) => split.r(ro + b),
        }));
    }
    Ok(PreStrategy::trusted(
        inner,
        split.game(),
        label,
        Some(split),
    ))
}

fn require_rc_map(source: &Esp, target: &Esp, f: &EsMap) -> Result<()> {
    if !f.is_total() || f.source_len() != source.len() || f.target_len() != target.len() {
        return Err(Error::Precondition(
            "lifting needs a total map between the games".into(),
        ));
    }
    if let MapVerdict::NotAMap(why) = check_map(
        source,
        target,
        f,
        Some((source.polarities(), target.polarities())),
    )? {
        return Err(Error::NotAMap(why));
    }
    let as_strategy = PreStrategy::new(source.clone(), target.clone(), f.values())?;
    if !is_receptive(&as_strategy)?.holds() || !is_courteous(&as_strategy).holds() {
        return Err(Error::Precondition(
            "lifted map must be receptive and courteous".into(),
        ));
    }
    Ok(())
}

/// `lift f : A ⊸ B` on `CC_A`, labelled by `(A⊥ ∥ f) ∘ cc_A`.
pub fn lift(a: &Esp, b: &Esp, f: &EsMap) -> Result<PreStrategy> {
    require_rc_map(a, b, f)?;
    let cc = copycat(a)?;
    let n = a.len();
    let split = Split::new(a.clone(), b.clone());
    let label = (0..2 * n)
        .map(|i| {
            if i < n {
                split.l(i)
            } else {
                split.r(f.at(i - n))
            }
        })
        .collect();
    Ok(PreStrategy::trusted(
        cc.inner().clone(),
        split.game(),
        label,
        Some(split),
    ))
}

/// `colift f : A ⊸ B` on `CC_B` for `f : B⊥ → A⊥`, labelled by `(f ∥ B) ∘ cc_B`.
pub fn colift(a: &Esp, b: &Esp, f: &EsMap) -> Result<PreStrategy> {
    require_rc_map(&b.dual(), &a.dual(), f)?;
    let cc = copycat(b)?;
    let n = b.len();
    let split = Split::new(a.clone(), b.clone());
    let label = (0..2 * n)
        .map(|i| {
            if i < n {
                split.l(f.at(i))
            } else {
                split.r(i - n)
            }
        })
        .collect();
    Ok(PreStrategy::trusted(
        cc.inner().clone(),
        split.game(),
        label,
        Some(split),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralKind {
    Rho,
    Lambda,
    Swap,
    Alpha,
}

impl fmt::Display for StructuralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructuralKind::Rho => "rho",
            StructuralKind::Lambda => "lambda",
            StructuralKind::Swap => "swap",
            StructuralKind::Alpha => "alpha",
        })
    }
}

impl std::str::FromStr for StructuralKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(Self::Rho),
            "lambda" => Ok(Self::Lambda),
            "swap" => Ok(Self::Swap),
            "alpha" => Ok(Self::Alpha),
            other => Err(Error::Precondition(format!(
                "unknown structural iso `{other}`"
            ))),
        }
    }
}

/// A structural isomorphism of games, as a total map `source → target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralIso {
    pub kind: StructuralKind,
    pub source: Esp,
    pub target: Esp,
    pub map: EsMap,
}

impl StructuralIso {
    /// `ρ_A : A ∥ 1 → A`.
    #[must_use]
    pub fn rho(a: &Esp) -> Self {
        Self {
            kind: StructuralKind::Rho,
            source: par(a, &Esp::empty()),
            target: a.clone(),
            map: EsMap::identity(a.len()),
        }
    }

    /// `λ_A : 1 ∥ A → A`.
    #[must_use]
    pub fn lambda(a: &Esp) -> Self {
        Self {
            kind: StructuralKind::Lambda,
            source: par(&Esp::empty(), a),
            target: a.clone(),
            map: EsMap::identity(a.len()),
        }
    }

    /// `s_{A,B} : A ∥ B → B ∥ A`.
    #[must_use]
    pub fn swap(a: &Esp, b: &Esp) -> Self {
        let (n, m) = (a.len(), b.len());
        let image = (0..n + m)
            .map(|i| if i < n { m + i } else { i - n })
            .collect();
        Self {
            kind: StructuralKind::Swap,
            source: par(a, b),
            target: par(b, a),
            map: EsMap::total(image, n + m),
        }
    }

    /// `α_{A,B,C} : (A ∥ B) ∥ C → A ∥ (B ∥ C)`.
    #[must_use]
    pub fn alpha(a: &Esp, b: &Esp, c: &Esp) -> Self {
        let n = a.len() + b.len() + c.len();
        Self {
            kind: StructuralKind::Alpha,
            source: par(&par(a, b), c),
            target: par(a, &par(b, c)),
            map: EsMap::identity(n),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.map.source_len()];
        for (i, t) in self.map.values().into_iter().enumerate() {
            image[t] = i;
        }
        Self {
            kind: self.kind,
            source: self.target.clone(),
            target: self.source.clone(),
            map: EsMap::total(image, self.source.len()),
        }
    }

    /// The lifted strategy `source ⊸ target`.
    pub fn lift(&self) -> Result<PreStrategy> {
        lift(&self.source, &self.target, &self.map)
    }

    /// A bijective map of esps whose inverse is one too, both receptive
    /// and courteous.
    pub fn check(&self) -> Result<bool> {
        for iso in [self.clone(), self.inverse()] {
            let values = iso.map.values();
            if values.iter().copied().collect::<EventSet>().len() != iso.target.len()
                || values.len() != iso.target.len()
            {
                return Ok(false);
            }
            let pols = Some((iso.source.polarities(), iso.target.polarities()));
            if !check_map(&iso.source, &iso.target, &iso.map, pols)?.is_map() {
                return Ok(false);
            }
            let s = PreStrategy::new(iso.source.clone(), iso.target.clone(), values)?;
            if !is_receptive(&s)?.holds() || !is_courteous(&s).holds() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `η_A : 1 ⊸ A⊥ ∥ A` on `CC_A`.
pub fn eta(a: &Esp) -> Result<PreStrategy> {
    let cc = copycat(a)?;
    let n = a.len();
    let split = Split::new(Esp::empty(), par(&a.dual(), a));
    let label = (0..2 * n).map(|i| split.r(i)).collect();
    Ok(PreStrategy::trusted(
        cc.inner().clone(),
        split.game(),
        label,
        Some(split),
    ))
}

/// `ε_A : A ∥ A⊥ ⊸ 1` on `CC_A`.
pub fn epsilon(a: &Esp) -> Result<PreStrategy> {
    let cc = copycat(a)?;
    let n = a.len();
    let split = Split::new(par(a, &a.dual()), Esp::empty());
    let label = (0..2 * n).map(|i| split.l(i)).collect();
    Ok(PreStrategy::trusted(
        cc.inner().clone(),
        split.game(),
        label,
        Some(split),
    ))
}

/// `σ_n ⊙ .. ⊙ σ_1`, composed left to right.
pub fn compose_chain(chain: &[PreStrategy]) -> Result<PreStrategy> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::Precondition("empty chain".into()))?;
    rest.iter().try_fold(first.clone(), |acc, next| {
        Ok(compose(&acc, next)?.strategy().clone())
    })
}

/// Both snake composites with an isomorphism to the matching copycat, if found.
#[derive(Debug, Clone)]
pub struct Snake {
    pub first: PreStrategy,
    pub second: PreStrategy,
    pub first_iso: Option<Vec<usize>>,
    pub second_iso: Option<Vec<usize>>,
}

impl Snake {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.first_iso.is_some() && self.second_iso.is_some()
    }
}

/// `lift λ_A ⊙ (ε_A ⊗ cc_A) ⊙ lift α⁻¹ ⊙ (cc_A ⊗ η_A) ⊙ lift ρ_A⁻¹ ≅ cc_A`,
/// and the mirrored chain through `A⊥`.
pub fn snake_check(a: &Esp) -> Result<Snake> {
    let ad = a.dual();
    let (cc, ccd) = (copycat(a)?, copycat(&ad)?);
    let first = compose_chain(&[
        StructuralIso::rho(a).inverse().lift()?,
        tensor(&cc, &eta(a)?)?,
        StructuralIso::alpha(a, &ad, a).inverse().lift()?,
        tensor(&epsilon(a)?, &cc)?,
        StructuralIso::lambda(a).lift()?,
    ])?;
    let second = compose_chain(&[
        StructuralIso::lambda(&ad).inverse().lift()?,
        tensor(&eta(a)?, &ccd)?,
        StructuralIso::alpha(&ad, a, &ad).lift()?,
        tensor(&ccd, &epsilon(a)?)?,
        StructuralIso::rho(&ad).lift()?,
    ])?;
    let first_iso = first.isomorphism(&cc)?;
    let second_iso = second.isomorphism(&ccd)?;
    Ok(Snake {
        first,
        second,
        first_iso,
        second_iso,
    })
}

/// Horizontal composite `g ⊙ f : T ⊙ S → T' ⊙ S'` of 2-cells `f : S → S'`
/// and `g : T → T'`, between two computed compositions.
pub fn horizontal(
    src: &CompositionResult,
    dst: &CompositionResult,
    f: &EsMap,
    g: &EsMap,
) -> Result<EsMap> {
    let parts: Vec<Option<usize>> = (0..src.interaction.open.parts.len()).map(Some).collect();
    let on_interaction = interaction_map(&src.interaction, &dst.interaction, f, g, &parts)?;
    visible_map(src, dst, &on_interaction)
}

/// `α_{σ,τ,ρ} : (U ⊙ T) ⊙ S → U ⊙ (T ⊙ S)` with the two composites.
#[derive(Debug, Clone)]
pub struct Associator {
    /// `(U ⊙ T) ⊙ S`.
    pub source: CompositionResult,
    /// `U ⊙ (T ⊙ S)`.
    pub target: CompositionResult,
    pub map: EsMap,
}

/// Built on ternary interactions: the iso `(U ⊛ T) ⊛ S → U ⊛ (T ⊛ S)` comes
/// from pullback mediation, and is pushed through both hiding chains.
pub fn associator(sigma: &PreStrategy, tau: &PreStrategy, rho: &PreStrategy) -> Result<Associator> {
    let ts = compose(sigma, tau)?;
    let ut = compose(tau, rho)?;
    let source = compose(sigma, ut.strategy())?;
    let target = compose(ts.strategy(), rho)?;
    let x = interact(&Open::from_strategy(sigma)?, &ut.interaction.open)?;
    let y = interact(&ts.interaction.open, &Open::from_strategy(rho)?)?;
    let (xs, n) = (x.structure(), x.structure().len());

    let inner_of = |el: Elem| match el {
        Elem::Inner(i) => Ok(i),
        Elem::Pad(..) => Err(Error::Mismatch("expected a factor event".into())),
    };
    let place = |idx: Option<usize>| {
        idx.ok_or_else(|| Error::Mismatch("element missing from a ternary side".into()))
    };
    let ti = &ts.interaction;
    let ui = &ut.interaction;

    // T ⊛ S part of every event of X labelled in A, B or C.
    let mut alpha1 = Vec::with_capacity(n);
    let mut beta1 = Vec::with_capacity(n);
    for e in 0..n {
        let (c, i) = x.open.label[e];
        let (a, b) = match c {
            0 => (
                ti.left_index(x.left_elem(e)),
                ti.right_index(Elem::Pad(0, i)),
            ),
            1 => {
                let t = ui.left_elem(inner_of(x.right_elem(e))?);
                (ti.left_index(x.left_elem(e)), ti.right_index(t))
            }
            2 => {
                let t = ui.left_elem(inner_of(x.right_elem(e))?);
                (ti.left_index(Elem::Pad(2, i)), ti.right_index(t))
            }
            _ => (None, None),
        };
        if c < 3 {
            alpha1.push(Some(place(a)?));
            beta1.push(Some(place(b)?));
        } else {
            alpha1.push(None);
            beta1.push(None);
        }
    }
    let m1 = ti.pullback.mediate(
        xs,
        &EsMap::new(alpha1, ti.pullback.left().len()),
        &EsMap::new(beta1, ti.pullback.right().len()),
    )?;

    let mut alpha2 = Vec::with_capacity(n);
    let mut beta2 = Vec::with_capacity(n);
    for e in 0..n {
        let (c, i) = x.open.label[e];
        let a = if c == 3 {
            y.left_index(Elem::Pad(3, i))
        } else {
            let inner = m1
                .get(e)
                .ok_or_else(|| Error::NotAMap("ternary interaction lost an event".into()))?;
            y.left_index(Elem::Inner(inner))
        };
        let b = match c {
            0 | 1 => y.right_index(Elem::Pad(c, i)),
            _ => y.right_index(ui.right_elem(inner_of(x.right_elem(e))?)),
        };
        alpha2.push(Some(place(a)?));
        beta2.push(Some(place(b)?));
    }
    let a = y.pullback.mediate(
        xs,
        &EsMap::new(alpha2, y.pullback.left().len()),
        &EsMap::new(beta2, y.pullback.right().len()),
    )?;
    if !a.is_total()
        || a.values().into_iter().collect::<EventSet>().len() != y.structure().len()
        || n != y.structure().len()
    {
        return Err(Error::NotAMap(
            "ternary interactions are not isomorphic".into(),
        ));
    }

    let hid_x = interaction_map(
        &x,
        &source.interaction,
        &EsMap::identity(sigma.inner().len()),
        &ut.hiding,
        &[Some(0), Some(1), None, Some(2)],
    )?
    .then(&source.hiding)?;
    let hid_y = interaction_map(
        &y,
        &target.interaction,
        &ts.hiding,
        &EsMap::identity(rho.inner().len()),
        &[Some(0), None, Some(1), Some(2)],
    )?
    .then(&target.hiding)?;

    let m = source.embedding.len();
    let mut image: Vec<Option<usize>> = vec![None; m];
    for e in 0..n {
        let Some(v) = hid_x.get(e) else { continue };
        let w = hid_y.get(a.at(e)).ok_or_else(|| {
            Error::NotAMap("associator sends a visible event to a hidden one".into())
        })?;
        match image[v] {
            Some(prev) if prev != w => {
                return Err(Error::NotAMap("associator is not well defined".into()))
            }
            _ => image[v] = Some(w),
        }
    }
    let map = EsMap::new(image, target.embedding.len());
    if !map.is_total() || !is_strategy_iso(source.strategy(), target.strategy(), &map.values())? {
        return Err(Error::NotAMap(
            "associator is not an isomorphism of strategies".into(),
        ));
    }
    Ok(Associator {
        source,
        target,
        map,
    })
}

/// Both sides of Mac Lane's pentagon for `σ₁ : A ⊸ B` up to `σ₄ : D ⊸ E`.
#[derive(Debug, Clone)]
pub struct Pentagon {
    pub top: EsMap,
    pub bottom: EsMap,
}

impl Pentagon {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.top == self.bottom
    }
}

pub fn pentagon(
    s1: &PreStrategy,
    s2: &PreStrategy,
    s3: &PreStrategy,
    s4: &PreStrategy,
) -> Result<Pentagon> {
    let c = |a: &PreStrategy, b: &PreStrategy| -> Result<PreStrategy> {
        Ok(compose(a, b)?.strategy().clone())
    };
    let s21 = c(s1, s2)?;
    let s32 = c(s2, s3)?;
    let s43 = c(s3, s4)?;

    let top = associator(s1, s2, &s43)?
        .map
        .then(&associator(&s21, s3, s4)?.map)?;

    let inner = associator(s2, s3, s4)?;
    let step1 = horizontal(
        &compose(s1, inner.source.strategy())?,
        &compose(s1, inner.target.strategy())?,
        &EsMap::identity(s1.inner().len()),
        &inner.map,
    )?;
    let step2 = associator(s1, &s32, s4)?.map;
    let outer = associator(s1, s2, s3)?;
    let step3 = horizontal(
        &compose(outer.source.strategy(), s4)?,
        &compose(outer.target.strategy(), s4)?,
        &outer.map,
        &EsMap::identity(s4.inner().len()),
    )?;
    let bottom = step1.then(&step2)?.then(&step3)?;
    Ok(Pentagon { top, bottom })
}

/// `ρ_τ ⊙ S` against `(T ⊙ λ_σ) ∘ α_{σ,cc_B,τ}` for `σ : A ⊸ B`, `τ : B ⊸ C`.
#[derive(Debug, Clone)]
pub struct Triangle {
    pub direct: EsMap,
    pub through_associator: EsMap,
}

impl Triangle {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.direct == self.through_associator
    }
}

pub fn triangle(sigma: &PreStrategy, tau: &PreStrategy) -> Result<Triangle> {
    let b = &split_of(sigma)?.right;
    let cc = copycat(b)?;
    let (rc, rho_tau) = right_unitor(tau)?;
    let (lc, lambda_sigma) = left_unitor(sigma)?;
    let plain = compose(sigma, tau)?;
    let id_s = EsMap::identity(sigma.inner().len());
    let id_t = EsMap::identity(tau.inner().len());
    let direct = horizontal(&compose(sigma, rc.strategy())?, &plain, &id_s, &rho_tau)?;
    let alpha = associator(sigma, &cc, tau)?;
    let through_associator = alpha.map.then(&horizontal(
        &compose(lc.strategy(), tau)?,
        &plain,
        &lambda_sigma,
        &id_t,
    )?)?;
    Ok(Triangle {
        direct,
        through_associator,
    })
}

/// The same pre-strategy with inner event `e` moved to index `perm[e]`,
/// and the 2-cell `perm` from the original to it.
pub fn reindex(sigma: &PreStrategy, perm: &[usize]) -> Result<(PreStrategy, EsMap)> {
    let s = sigma.inner();
    let n = s.len();
    if perm.len() != n
        || perm.iter().copied().collect::<EventSet>().len() != n
        || perm.iter().any(|&p| p >= n)
    {
        return Err(Error::Precondition(
            "not a permutation of the events".into(),
        ));
    }
    let mut back = vec![0; n];
    for (e, &p) in perm.iter().enumerate() {
        back[p] = e;
    }
    let move_set = |x: &EventSet| -> EventSet { x.iter().map(|e| perm[e]).collect() };
    let ids = back.iter().map(|&e| s.id(e).clone()).collect();
    let down = back.iter().map(|&e| move_set(s.below(e))).collect();
    let gens: Vec<EventSet> = s.generators().iter().map(move_set).collect();
    let structure = EventStructure::from_down(ids, down, &gens);
    let pol = back.iter().map(|&e| s.polarity(e)).collect();
    let label = back.iter().map(|&e| sigma.label()[e]).collect();
    let inner = Esp::new(structure, pol)?;
    let moved = PreStrategy::trusted(inner, sigma.game().clone(), label, sigma.split().cloned());
    Ok((moved, EsMap::total(perm.to_vec(), n)))
}

/// Naturality of both unitors along a 2-cell `f : σ ⇒ σ'`:
/// `λ_σ' ∘ (cc ⊙ f) = f ∘ λ_σ` and `ρ_σ' ∘ (f ⊙ cc) = f ∘ ρ_σ`.
pub fn unitor_naturality(sigma: &PreStrategy, sigma2: &PreStrategy, f: &EsMap) -> Result<bool> {
    let split = split_of(sigma)?;
    let (cc_a, cc_b) = (copycat(&split.left)?, copycat(&split.right)?);
    let (l1, lam1) = left_unitor(sigma)?;
    let (l2, lam2) = left_unitor(sigma2)?;
    let whisk = horizontal(&l1, &l2, f, &EsMap::identity(cc_b.inner().len()))?;
    let left_ok = whisk.then(&lam2)? == lam1.then(f)?;
    let (r1, rho1) = right_unitor(sigma)?;
    let (r2, rho2) = right_unitor(sigma2)?;
    let whisk = horizontal(&r1, &r2, &EsMap::identity(cc_a.inner().len()), f)?;
    let right_ok = whisk.then(&rho2)? == rho1.then(f)?;
    Ok(left_ok && right_ok)
}

#[cfg(test)]
mod tests;

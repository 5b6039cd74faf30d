//! Games: duals, copycat, the copycat functor and the Scott order.
//!
//! Copycat events live in `A⊥ ∥ A` with prefixes `L.` (the dual copy) and
//! `R.`. Every positive event of either copy waits for its negative twin
//! on the other side.

use crate::error::{Error, Result};
use crate::es::{check_map, EsMap, Esp, EventStructure, MapVerdict, Polarity, PreStrategy, Split};
use crate::set::EventSet;

/// A game is an esp used as an interface.
pub type Game = Esp;

/// `A⊥`: same events, order and consistency; polarities flipped.
#[must_use]
pub fn dual(a: &Esp) -> Esp {
    a.dual()
}

/// `A⊥ ∥ A` with prefixes `L.` and `R.`.
#[must_use]
pub fn copycat_game(a: &Esp) -> Esp {
    Split::new(a.clone(), a.clone()).game()
}

/// Down-closures in `CC_A`, from the closed form: `(i,a) ≤ (j,a')` iff
/// `i = j` and `a ≤ a'`, or `i ≠ j` and some `a ≤ a'' ≤ a'` has `(i,a'')`
/// negative. Index `i·n + a` stands for `(i,a)`, with `0` the dual copy.
#[must_use]
pub fn copycat_down(a: &Esp) -> Vec<EventSet> {
    let n = a.len();
    // Polarity of (i, x) in A⊥ ∥ A.
    let negative = |i: usize, x: usize| (a.polarity(x) == Polarity::Neg) == (i == 1);
    let mut down = Vec::with_capacity(2 * n);
    for j in 0..2 {
        for x in 0..n {
            let i = 1 - j;
            let mut d: EventSet = a.below(x).iter().map(|y| j * n + y).collect();
            for mid in a.below(x).iter().filter(|&m| negative(i, m)) {
                d.extend(a.below(mid).iter().map(|y| i * n + y));
            }
            down.push(d);
        }
    }
    down
}

/// The esp `CC_A`.
pub fn copycat_esp(a: &Esp) -> Result<Esp> {
    let game = copycat_game(a);
    let ids = game.ids().to_vec();
    let structure = EventStructure::derive(ids, copycat_down(a), |x| game.is_consistent(x))?;
    Esp::new(structure, game.polarities().to_vec())
}

/// `cc_A : CC_A → A⊥ ∥ A`, a strategy `A ⊸ A` labelled by the identity.
pub fn copycat(a: &Esp) -> Result<PreStrategy> {
    let inner = copycat_esp(a)?;
    let label = (0..inner.len()).collect();
    Ok(PreStrategy::trusted(
        inner,
        copycat_game(a),
        label,
        Some(Split::new(a.clone(), a.clone())),
    ))
}

/// `CC_f = f⊥ ∥ f : CC_A → CC_B` for a polarity-preserving total map `f : A → B`.
pub fn copycat_map(a: &Esp, b: &Esp, f: &EsMap) -> Result<EsMap> {
    if !f.is_total() {
        return Err(Error::Precondition(
            "copycat functor needs a total map".into(),
        ));
    }
    if let MapVerdict::NotAMap(why) = check_map(a, b, f, Some((a.polarities(), b.polarities())))? {
        return Err(Error::NotAMap(why));
    }
    let (n, m) = (a.len(), b.len());
    let image = (0..2 * n)
        .map(|i| if i < n { f.at(i) } else { m + f.at(i - n) })
        .collect();
    Ok(EsMap::total(image, 2 * m))
}

fn require_configs(a: &Esp, x: &EventSet, y: &EventSet) -> Result<()> {
    for c in [x, y] {
        if !a.is_configuration(c) {
            return Err(Error::Precondition(format!(
                "{} is not a configuration",
                a.show(c)
            )));
        }
    }
    Ok(())
}

/// Scott order `x ⊑ y` iff `x ⊇⁻ (x ∩ y) ⊆⁺ y`; returns the witness `x ∩ y`.
pub fn scott_leq(a: &Esp, x: &EventSet, y: &EventSet) -> Result<Option<EventSet>> {
    require_configs(a, x, y)?;
    Ok(scott_witness(a, x, y))
}

/// [`scott_leq`] without the configuration checks.
#[must_use]
pub fn scott_witness(a: &Esp, x: &EventSet, y: &EventSet) -> Option<EventSet> {
    let z = x.intersection(y);
    let lost_negative = x.difference(&z).iter().all(|e| a.is_negative(e));
    let gained_positive = y.difference(&z).iter().all(|e| a.is_positive(e));
    (lost_negative && gained_positive).then_some(z)
}

/// Scott order through copycat: `y ∥ x ∈ 𝒞(CC_A)`, with `y` in the dual copy.
pub fn scott_leq_via_copycat(cc: &Esp, a: &Esp, x: &EventSet, y: &EventSet) -> Result<bool> {
    require_configs(a, x, y)?;
    let n = a.len();
    let joined: EventSet = y.iter().chain(x.iter().map(|e| e + n)).collect();
    Ok(cc.is_configuration(&joined))
}

/// Scott order by search: some configuration `z` with `x ⊇⁻ z ⊆⁺ y`.
pub fn scott_leq_by_search(
    a: &Esp,
    configs: &[EventSet],
    x: &EventSet,
    y: &EventSet,
) -> Result<bool> {
    require_configs(a, x, y)?;
    Ok(configs.iter().any(|z| {
        z.is_subset(x)
            && z.is_subset(y)
            && x.difference(z).iter().all(|e| a.is_negative(e))
            && y.difference(z).iter().all(|e| a.is_positive(e))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Esp {
        let s = EventStructure::from_lists(&["Click", "Done"], &[], &[]).unwrap();
        Esp::new(s, vec![Polarity::Neg, Polarity::Pos]).unwrap()
    }

    #[test]
    fn dual_of_w() {
        let d = dual(&w());
        assert_eq!(d.polarities(), &[Polarity::Pos, Polarity::Neg]);
        assert_eq!(dual(&d), w());
    }

    #[test]
    fn copycat_of_w_has_two_cross_edges() {
        let cc = copycat(&w()).unwrap();
        let inner = cc.inner();
        let edges: Vec<(String, String)> = inner
            .immediate_edges()
            .into_iter()
            .map(|(a, b)| (inner.id(a).to_string(), inner.id(b).to_string()))
            .collect();
        assert_eq!(
            edges,
            vec![
                ("R.Click".to_owned(), "L.Click".to_owned()),
                ("L.Done".to_owned(), "R.Done".to_owned())
            ]
        );
    }

    #[test]
    fn copycat_of_empty_is_empty() {
        assert!(copycat(&Esp::empty()).unwrap().inner().is_empty());
    }

    #[test]
    fn scott_examples_on_w() {
        let a = w();
        let click = EventSet::singleton(0);
        let done = EventSet::singleton(1);
        let none = EventSet::new();
        assert_eq!(scott_leq(&a, &click, &none).unwrap(), Some(none.clone()));
        assert_eq!(scott_leq(&a, &done, &none).unwrap(), None);
        assert_eq!(scott_leq(&a, &none, &done).unwrap(), Some(none.clone()));
        assert_eq!(scott_leq(&a, &done, &done).unwrap(), Some(done));
    }
}

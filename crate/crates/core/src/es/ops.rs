//! Parallel composition and projection.

use super::{EsMap, Esp, EventStructure};
use crate::error::{Error, Result};
use crate::set::EventSet;

/// Tagged disjoint union: block `i` keeps its order and is renamed
/// `prefix_i.id`. Events are laid out block after block.
#[must_use]
pub fn parallel_tagged(parts: &[(&str, &EventStructure)]) -> EventStructure {
    let mut ids = Vec::new();
    let mut down = Vec::new();
    let mut gens = Vec::new();
    let mut offset = 0;
    for (prefix, part) in parts {
        let shift = |s: &EventSet| s.iter().map(|e| e + offset).collect::<EventSet>();
        ids.extend(part.ids().iter().map(|id| id.prefixed(prefix)));
        down.extend(part.down.iter().map(shift));
        gens.extend(part.generators().iter().map(shift));
        offset += part.len();
    }
    EventStructure::from_down(ids, down, &gens)
}

/// `E ∥ F` with prefixes `0.` and `1.`, and the two injections.
#[must_use]
pub fn parallel(e: &EventStructure, f: &EventStructure) -> (EventStructure, EsMap, EsMap) {
    let both = parallel_tagged(&[("0", e), ("1", f)]);
    let total = both.len();
    let inj0 = EsMap::total((0..e.len()).collect(), total);
    let inj1 = EsMap::total((e.len()..total).collect(), total);
    (both, inj0, inj1)
}

/// `A ∥ B` on esps; polarities are carried per component.
#[must_use]
pub fn parallel_esp(a: &Esp, b: &Esp) -> (Esp, EsMap, EsMap) {
    let (s, i0, i1) = parallel(a, b);
    let pol = a
        .polarities()
        .iter()
        .chain(b.polarities())
        .copied()
        .collect();
    (Esp::new(s, pol).expect("sizes agree"), i0, i1)
}

impl Esp {
    /// Tagged parallel composition of esps.
    #[must_use]
    pub fn tagged(parts: &[(&str, &Esp)]) -> Esp {
        let structures: Vec<(&str, &EventStructure)> =
            parts.iter().map(|(p, a)| (*p, a.structure())).collect();
        let s = parallel_tagged(&structures);
        let pol = parts
            .iter()
            .flat_map(|(_, a)| a.polarities().iter().copied())
            .collect();
        Esp::new(s, pol).expect("sizes agree")
    }
}

/// `E ↓ V` together with the hiding map `E ⇀ E ↓ V`.
#[derive(Debug, Clone)]
pub struct Projection<S> {
    pub structure: S,
    pub hiding: EsMap,
    /// Index in `E` of every event of `E ↓ V`.
    pub embedding: Vec<usize>,
}

/// Restrict `E` to `V`: order restricted, consistency inherited. Ids are kept.
pub fn project(e: &EventStructure, v: &EventSet) -> Result<Projection<EventStructure>> {
    if let Some(bad) = v.iter().find(|&x| x >= e.len()) {
        return Err(Error::UnknownEvent(format!("#{bad}")));
    }
    let embedding: Vec<usize> = v.iter().collect();
    let mut position = vec![None; e.len()];
    for (i, &old) in embedding.iter().enumerate() {
        position[old] = Some(i);
    }
    let ids = embedding.iter().map(|&old| e.id(old).clone()).collect();
    let down = embedding
        .iter()
        .map(|&old| e.below(old).iter().filter_map(|d| position[d]).collect())
        .collect();
    let back = |x: &EventSet| x.iter().map(|i| embedding[i]).collect::<EventSet>();
    let structure = EventStructure::derive(ids, down, |x| e.is_consistent(&back(x)))?;
    let hiding = EsMap::new(position, structure.len());
    Ok(Projection {
        structure,
        hiding,
        embedding,
    })
}

/// Projection of an esp; polarities are inherited.
pub fn project_esp(a: &Esp, v: &EventSet) -> Result<Projection<Esp>> {
    let p = project(a, v)?;
    let pol = p.embedding.iter().map(|&old| a.polarity(old)).collect();
    Ok(Projection {
        structure: Esp::new(p.structure, pol)?,
        hiding: p.hiding,
        embedding: p.embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coffee() -> EventStructure {
        EventStructure::from_lists(&["coin", "coffee"], &[("coin", "coffee")], &[]).unwrap()
    }

    fn tea() -> EventStructure {
        EventStructure::from_lists(&["coin", "tea"], &[("coin", "tea")], &[]).unwrap()
    }

    fn vending() -> EventStructure {
        EventStructure::from_lists(
            &["coin", "selC", "selT", "coffee", "tea"],
            &[
                ("coin", "coffee"),
                ("coin", "tea"),
                ("selC", "coffee"),
                ("selT", "tea"),
            ],
            &[&["coffee", "tea"]],
        )
        .unwrap()
    }

    #[test]
    fn coffee_parallel_tea() {
        let (both, inj0, inj1) = parallel(&coffee(), &tea());
        assert_eq!(both.len(), 4);
        assert_eq!(both.immediate_edges().len(), 2);
        assert_eq!(both.configurations().unwrap().len(), 9);
        assert_eq!(both.id(inj1.get(1).unwrap()).as_str(), "1.tea");
        assert_eq!(inj0.get(0), Some(0));
    }

    #[test]
    fn parallel_with_empty_is_a_copy() {
        let (both, _, _) = parallel(&vending(), &EventStructure::empty());
        assert_eq!(both.len(), 5);
        assert_eq!(both.configurations().unwrap().len(), 12);
        assert_eq!(both.generators().len(), 1);
    }

    #[test]
    fn projecting_vending_machine_on_drinks() {
        let e = vending();
        let v = e.lookup_set(["coffee", "tea"]).unwrap();
        let p = project(&e, &v).unwrap();
        assert_eq!(p.structure.len(), 2);
        assert!(p.structure.immediate_edges().is_empty());
        assert_eq!(
            p.structure.show(&p.structure.generators()[0]),
            "{coffee,tea}"
        );
    }

    #[test]
    fn projecting_on_everything_is_identity() {
        let e = vending();
        let p = project(&e, &e.events()).unwrap();
        assert_eq!(p.structure, e);
        assert!(p.hiding.is_total());
    }
}

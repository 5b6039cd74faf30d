//! Maps of event structures, total and partial.

use std::fmt;

use super::{find_isomorphisms, project, EventStructure, IsoQuery, Polarity};
use crate::error::{Error, Result};
use crate::set::EventSet;

/// A function on event indices, possibly partial, into a target of known size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EsMap {
    image: Vec<Option<usize>>,
    target_len: usize,
}

impl EsMap {
    #[must_use]
    pub fn new(image: Vec<Option<usize>>, target_len: usize) -> Self {
        Self { image, target_len }
    }

    #[must_use]
    pub fn total(image: Vec<usize>, target_len: usize) -> Self {
        Self {
            image: image.into_iter().map(Some).collect(),
            target_len,
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self::total((0..n).collect(), n)
    }

    /// The map defined nowhere.
    #[must_use]
    pub fn undefined(source_len: usize, target_len: usize) -> Self {
        Self {
            image: vec![None; source_len],
            target_len,
        }
    }

    #[must_use]
    pub fn source_len(&self) -> usize {
        self.image.len()
    }

    #[must_use]
    pub fn target_len(&self) -> usize {
        self.target_len
    }

    #[must_use]
    pub fn get(&self, e: usize) -> Option<usize> {
        self.image[e]
    }

    /// Image of a total map at `e`.
    #[must_use]
    pub fn at(&self, e: usize) -> usize {
        self.image[e].expect("map defined at event")
    }

    #[must_use]
    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    #[must_use]
    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    /// Values of a total map.
    #[must_use]
    pub fn values(&self) -> Vec<usize> {
        self.image.iter().map(|v| v.expect("total map")).collect()
    }

    #[must_use]
    pub fn domain(&self) -> EventSet {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|_| i))
            .collect()
    }

    /// Image of a set, ignoring events outside the domain.
    #[must_use]
    pub fn apply(&self, x: &EventSet) -> EventSet {
        x.iter().filter_map(|e| self.image[e]).collect()
    }

    /// Preimage of a set within the domain.
    #[must_use]
    pub fn preimage(&self, y: &EventSet) -> EventSet {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.filter(|t| y.contains(*t)).map(|_| i))
            .collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &EsMap) -> Result<EsMap> {
        if self.target_len != next.source_len() {
            return Err(Error::Mismatch(format!(
                "composing maps through {} and {} events",
                self.target_len,
                next.source_len()
            )));
        }
        Ok(EsMap {
            image: self
                .image
                .iter()
                .map(|v| v.and_then(|t| next.image[t]))
                .collect(),
            target_len: next.target_len,
        })
    }
}

impl fmt::Debug for EsMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.image
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.map(|t| (i, t))),
            )
            .finish()
    }
}

/// `g ∘ f`.
pub fn compose_maps(f: &EsMap, g: &EsMap) -> Result<EsMap> {
    f.then(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapVerdict {
    TotalMap,
    PartialMap,
    PolarityPreservingMap,
    NotAMap(String),
}

impl MapVerdict {
    #[must_use]
    pub fn is_map(&self) -> bool {
        !matches!(self, MapVerdict::NotAMap(_))
    }
}

impl fmt::Display for MapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapVerdict::TotalMap => f.write_str("total-map"),
            MapVerdict::PartialMap => f.write_str("partial-map"),
            MapVerdict::PolarityPreservingMap => f.write_str("polarity-preserving-map"),
            MapVerdict::NotAMap(why) => write!(f, "not-a-map({why})"),
        }
    }
}

/// Check the map axioms by enumerating 𝒞(source): the image of every
/// configuration (restricted to the domain) is a configuration, and the map
/// is injective on it. With `polarity`, the map must also preserve polarity
/// on its domain; total maps then report `PolarityPreservingMap`.
pub fn check_map(
    source: &EventStructure,
    target: &EventStructure,
    f: &EsMap,
    polarity: Option<(&[Polarity], &[Polarity])>,
) -> Result<MapVerdict> {
    if f.source_len() != source.len() || f.target_len() != target.len() {
        return Err(Error::Mismatch(
            "map endpoints do not match the structures".into(),
        ));
    }
    if let Some((sp, tp)) = polarity {
        for e in f.domain().iter() {
            if sp[e] != tp[f.at(e)] {
                return Ok(MapVerdict::NotAMap(format!(
                    "polarity of {} differs from {}",
                    source.id(e),
                    target.id(f.at(e))
                )));
            }
        }
    }
    let configs = source.configurations()?;
    for x in configs.iter() {
        let defined = x.intersection(&f.domain());
        let img = f.apply(&defined);
        if img.len() != defined.len() {
            return Ok(MapVerdict::NotAMap(format!(
                "not injective on {}",
                source.show(x)
            )));
        }
        if !target.is_configuration(&img) {
            return Ok(MapVerdict::NotAMap(format!(
                "image {} of {} is not a configuration",
                target.show(&img),
                source.show(x)
            )));
        }
    }
    Ok(match (f.is_total(), polarity.is_some()) {
        (true, true) => MapVerdict::PolarityPreservingMap,
        (true, false) => MapVerdict::TotalMap,
        (false, _) => MapVerdict::PartialMap,
    })
}

/// Result of [`check_hiding_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HidingCheck {
    pub is_hiding: bool,
    /// `(y, wit(y))` for every `y ∈ 𝒞(target)`, when `is_hiding`.
    pub witness: Option<Vec<(EventSet, EventSet)>>,
}

/// Whether the partial map `f : E ⇀ F` is a hiding map: `f` restricted to its
/// domain is an isomorphism `E ↓ dom(f) ≅ F`. On success the witness table
/// `y ↦ [f⁻¹ y]` is returned after checking its defining properties.
pub fn check_hiding_map(
    e: &EventStructure,
    fst: &EventStructure,
    f: &EsMap,
) -> Result<HidingCheck> {
    let no = HidingCheck {
        is_hiding: false,
        witness: None,
    };
    if !check_map(e, fst, f, None)?.is_map() {
        return Ok(no);
    }
    let dom = f.domain();
    let p = project(e, &dom)?;
    let restricted: Vec<usize> = p.embedding.iter().map(|&old| f.at(old)).collect();
    let identity: Vec<usize> = (0..fst.len()).collect();
    let q = IsoQuery::new(&p.structure, fst)
        .over(&restricted, &identity)
        .limit(1);
    if find_isomorphisms(&q).is_empty() {
        return Ok(no);
    }
    let wit = |y: &EventSet| e.down_closure(&f.preimage(y));
    let f_configs = fst.configurations()?;
    let table: Vec<(EventSet, EventSet)> = f_configs.iter().map(|y| (y.clone(), wit(y))).collect();
    for (y, w) in &table {
        if !e.is_configuration(w) || f.apply(w) != *y {
            return Ok(no);
        }
    }
    for c in &f_configs.covers {
        if !table[c.from].1.is_subset(&table[c.to].1) {
            return Ok(no);
        }
    }
    for x in e.configurations()?.iter() {
        if !wit(&f.apply(x)).is_subset(x) {
            return Ok(no);
        }
    }
    Ok(HidingCheck {
        is_hiding: true,
        witness: Some(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::{Esp, Polarity};

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
    fn vending_labelling_is_a_prestrategy() {
        let s = vending();
        let m = EventStructure::from_lists(&["coin", "selC", "selT", "coffee", "tea"], &[], &[])
            .unwrap();
        let pol = |e: &EventStructure| {
            (0..e.len())
                .map(|i| {
                    if matches!(e.id(i).as_str(), "coffee" | "tea") {
                        Polarity::Pos
                    } else {
                        Polarity::Neg
                    }
                })
                .collect::<Vec<_>>()
        };
        let (sp, mp) = (pol(&s), pol(&m));
        let f = EsMap::total((0..5).map(|i| m.lookup(s.id(i)).unwrap()).collect(), 5);
        assert_eq!(
            check_map(&s, &m, &f, Some((&sp, &mp))).unwrap(),
            MapVerdict::PolarityPreservingMap
        );
        let _ = Esp::new(s, sp).unwrap();
    }

    #[test]
    fn identity_is_total_map() {
        let e = vending();
        assert_eq!(
            check_map(&e, &e, &EsMap::identity(5), None).unwrap(),
            MapVerdict::TotalMap
        );
    }

    #[test]
    fn collapsing_concurrent_events_is_not_a_map() {
        let e = EventStructure::from_lists(&["a", "b"], &[], &[]).unwrap();
        let one = EventStructure::from_lists(&["a"], &[], &[]).unwrap();
        let v = check_map(&e, &one, &EsMap::total(vec![0, 0], 1), None).unwrap();
        assert!(!v.is_map());
    }

    #[test]
    fn undefined_map_into_empty_is_hiding() {
        let e = vending();
        let h = check_hiding_map(&e, &EventStructure::empty(), &EsMap::undefined(5, 0)).unwrap();
        assert!(h.is_hiding);
        assert_eq!(h.witness.unwrap(), vec![(EventSet::new(), EventSet::new())]);
    }

    #[test]
    fn projection_hiding_is_hiding_map() {
        let e = vending();
        let v = e.lookup_set(["coin", "coffee", "tea"]).unwrap();
        let p = project(&e, &v).unwrap();
        assert!(
            check_hiding_map(&e, &p.structure, &p.hiding)
                .unwrap()
                .is_hiding
        );
    }

    #[test]
    fn collapsing_a_visible_dependency_is_not_hiding() {
        // a ⇢ b mapped onto two concurrent events: a map, but not a hiding map.
        let e = EventStructure::from_lists(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let f = EventStructure::from_lists(&["a", "b"], &[], &[]).unwrap();
        let m = EsMap::identity(2);
        assert!(check_map(&e, &f, &m, None).unwrap().is_map());
        assert!(!check_hiding_map(&e, &f, &m).unwrap().is_hiding);
    }

    #[test]
    fn injection_then_projection_is_identity() {
        let e = vending();
        let (both, inj0, _) =
            crate::es::parallel(&e, &EventStructure::from_lists(&["x"], &[], &[]).unwrap());
        let back = project(&both, &(0..5).collect()).unwrap();
        assert_eq!(
            compose_maps(&inj0, &back.hiding).unwrap(),
            EsMap::identity(5)
        );
    }
}

use super::*;
use crate::fixtures::{self, game_w};
use crate::games::copycat;

fn labelled(s: &EventStructure, game: &EventStructure) -> EsMap {
    EsMap::total(
        (0..s.len())
            .map(|e| game.lookup(s.id(e)).unwrap())
            .collect(),
        game.len(),
    )
}

fn shown_edges(e: &EventStructure, name: impl Fn(usize) -> String) -> Vec<(String, String)> {
    let mut v: Vec<_> = e
        .immediate_edges()
        .into_iter()
        .map(|(a, b)| (name(a), name(b)))
        .collect();
    v.sort();
    v
}

#[test]
fn two_causes_meet_at_the_shared_event() {
    let game = EventStructure::from_lists(&["a", "b", "c"], &[], &[]).unwrap();
    let s = EventStructure::from_lists(&["a", "b", "c"], &[("a", "c")], &[]).unwrap();
    let t = EventStructure::from_lists(&["a", "b", "c"], &[("b", "c")], &[]).unwrap();
    let pb = Pullback::new(&s, &labelled(&s, &game), &t, &labelled(&t, &game)).unwrap();
    let name = |e: usize| s.id(pb.pi1.at(e)).to_string();
    assert_eq!(pb.structure.len(), 3);
    assert_eq!(
        shown_edges(&pb.structure, name),
        vec![("a".into(), "c".into()), ("b".into(), "c".into())]
    );
    assert!(pb.structure.generators().is_empty());
}

#[test]
fn duplicated_copy_gives_four_events() {
    let game = EventStructure::from_lists(&["a", "b"], &[], &[]).unwrap();
    let s = EventStructure::from_lists(&["a", "a2", "b"], &[], &[&["a", "a2"]]).unwrap();
    let sigma = EsMap::total(vec![0, 0, 1], 2);
    let t = EventStructure::from_lists(&["a", "b"], &[("a", "b")], &[]).unwrap();
    let pb = Pullback::new(&s, &sigma, &t, &labelled(&t, &game)).unwrap();
    assert_eq!(pb.pairs.len(), 3);
    assert_eq!(pb.structure.len(), 4);
    let bs: Vec<usize> = (0..4).filter(|&e| pb.pi2.at(e) == 1).collect();
    assert_eq!(bs.len(), 2);
    let causes: Vec<usize> = bs
        .iter()
        .map(|&b| pb.pi1.at(pb.structure.immediate_causes(b).first().unwrap()))
        .collect();
    assert_eq!(causes, vec![0, 1]);
    assert_eq!(pb.structure.generators().len(), 1);
}

#[test]
fn deadlock_has_empty_interaction() {
    let (game, dealer, buyer) = fixtures::drug_money();
    let pb = Pullback::new(
        &dealer,
        &labelled(&dealer, &game),
        &buyer,
        &labelled(&buyer, &game),
    )
    .unwrap();
    assert!(pb.structure.is_empty());
    assert!(!is_secured(&dealer, &buyer, &[(0, 0), (1, 1)]).unwrap());
    assert!(is_secured(&dealer, &buyer, &[]).unwrap());
    assert_eq!(
        covering_sequence(&dealer, &buyer, &[(0, 0), (1, 1)]).unwrap(),
        None
    );
}

#[test]
fn single_pair_over_concurrent_events_is_secured() {
    let game = EventStructure::from_lists(&["a", "b", "c"], &[], &[]).unwrap();
    assert!(is_secured(&game, &game, &[(0, 0)]).unwrap());
}

#[test]
fn negation_of_nondeterministic_boolean() {
    let sigma = fixtures::nondet_bool();
    let tau = fixtures::negation();
    let i = interaction(&sigma, &tau).unwrap();
    let s = i.structure();
    assert_eq!(s.len(), 4);
    let game = i.flat_game();
    let label = i.flat_label();
    let name = |e: usize| game.id(label[e]).to_string();
    assert_eq!(
        shown_edges(s, name),
        vec![
            ("1.ff".into(), "2.tt".into()),
            ("1.tt".into(), "2.ff".into())
        ]
    );
    let gens: Vec<Vec<String>> = s
        .generators()
        .iter()
        .map(|g| {
            let mut v: Vec<String> = g.iter().map(name).collect();
            v.sort();
            v
        })
        .collect();
    assert_eq!(gens, vec![vec!["1.ff".to_owned(), "1.tt".to_owned()]]);

    let c = compose(&sigma, &tau).unwrap();
    let out = c.strategy();
    assert_eq!(out.inner().len(), 2);
    assert_eq!(out.inner().generators().len(), 1);
    assert!(out.isomorphism(&sigma).unwrap().is_some());
    assert!(check_map(out));

    let ff2 = (0..2)
        .find(|&e| out.game().id(out.label()[e]).as_str() == "R.ff")
        .unwrap();
    let w = minimal_witness(&c, &EventSet::singleton(ff2)).unwrap();
    let shown: Vec<String> = w.iter().map(name).collect();
    assert_eq!(shown.len(), 2);
    assert!(shown.contains(&"1.tt".to_owned()) && shown.contains(&"2.ff".to_owned()));
}

fn check_map(s: &PreStrategy) -> bool {
    crate::es::check_map(
        s.inner(),
        s.game(),
        &s.labelling(),
        Some((s.inner().polarities(), s.game().polarities())),
    )
    .unwrap()
    .is_map()
}

#[test]
fn copycat_composed_with_itself() {
    let cc = copycat(&game_w()).unwrap();
    let i = interaction(&cc, &cc).unwrap();
    assert_eq!(i.structure().len(), 6);
    assert_eq!(i.structure().immediate_edges().len(), 4);
    let c = compose(&cc, &cc).unwrap();
    assert!(c.strategy().isomorphism(&cc).unwrap().is_some());
    assert!(
        crate::es::check_hiding_map(i.structure(), &c.open.structure, &c.hiding)
            .unwrap()
            .is_hiding
    );
}

#[test]
fn copycat_drops_a_discourteous_link() {
    let cc = copycat(&game_w()).unwrap();
    let c = compose(&fixtures::done_then_click(), &cc).unwrap();
    let out = c.strategy();
    assert_eq!(out.inner().len(), 2);
    assert!(out.inner().immediate_edges().is_empty());
}

#[test]
fn mediating_the_projections_is_the_identity() {
    let sigma = fixtures::nondet_bool();
    let i = interaction(&sigma, &fixtures::negation()).unwrap();
    let pb = &i.pullback;
    let m = pb.mediate(&pb.structure, &pb.pi1, &pb.pi2).unwrap();
    assert_eq!(m, EsMap::identity(pb.structure.len()));
}

#[test]
fn empty_interaction_with_trivial_pads_is_the_pullback() {
    let y = fixtures::game_y();
    let sigma = fixtures::duplicate_on_y();
    let tau = fixtures::on(&y, fixtures::esp(&["o-"], &[], &[]).unwrap(), &["o"]).unwrap();
    let i = interact(
        &Open::from_strategy(&sigma).unwrap(),
        &Open::from_strategy(&dualised(&tau)).unwrap(),
    )
    .unwrap();
    let pb = Pullback::new(
        sigma.inner().structure(),
        &EsMap::total(vec![0, 0], 1),
        tau.inner().structure(),
        &EsMap::total(vec![0], 1),
    )
    .unwrap();
    assert_eq!(i.structure(), &pb.structure);
}

/// `1 ⊸ A` seen as `A ⊸ 1`.
fn dualised(sigma: &PreStrategy) -> PreStrategy {
    let split = sigma.split().unwrap();
    let flipped = Split::new(split.right.clone(), Esp::empty());
    let inner = sigma.inner().dual();
    PreStrategy::between(inner, flipped, sigma.label().to_vec()).unwrap()
}

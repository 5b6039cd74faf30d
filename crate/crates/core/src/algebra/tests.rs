use super::*;
use crate::fixtures::*;
use crate::laws::is_strategy;

fn iso(a: &PreStrategy, b: &PreStrategy) -> bool {
    a.isomorphism(b).unwrap().is_some()
}

#[test]
fn tensor_of_copycats_is_copycat_of_parallel() {
    let w = game_w();
    let cc = copycat(&w).unwrap();
    let t = tensor(&cc, &cc).unwrap();
    assert!(iso(&t, &copycat(&par(&w, &w)).unwrap()));
}

#[test]
fn tensor_with_the_empty_strategy() {
    let s = negation();
    let e = copycat(&Esp::empty()).unwrap();
    let t = tensor(&s, &e).unwrap();
    assert_eq!(t.inner().len(), s.inner().len());
    let back = StructuralIso::rho(&game_b());
    let relabelled =
        compose_chain(&[back.inverse().lift().unwrap(), t, back.lift().unwrap()]).unwrap();
    assert!(iso(&relabelled, &s));
}

#[test]
fn tensor_preserves_composition() {
    let (s1, t1) = (negation(), negation());
    let (s2, t2) = (copycat(&game_w()).unwrap(), copycat(&game_w()).unwrap());
    let lhs = tensor(
        compose(&s1, &t1).unwrap().strategy(),
        compose(&s2, &t2).unwrap().strategy(),
    )
    .unwrap();
    let rhs = compose(&tensor(&s1, &s2).unwrap(), &tensor(&t1, &t2).unwrap()).unwrap();
    assert!(iso(&lhs, rhs.strategy()));
}

#[test]
fn lift_of_identity_is_copycat() {
    let b = game_b();
    let l = lift(&b, &b, &EsMap::identity(b.len())).unwrap();
    let cc = copycat(&b).unwrap();
    assert_eq!(l.label(), cc.label());
    assert_eq!(l.inner(), cc.inner());
}

#[test]
fn lift_rejects_a_non_receptive_map() {
    // 𝕐 → 𝕐 ∥ 𝕐 misses a negative move.
    let y = game_y();
    let f = EsMap::total(vec![0], 2);
    assert!(lift(&y, &par(&y, &y), &f).is_err());
}

#[test]
fn swap_twice_is_copycat() {
    let (w, y) = (game_w(), game_y());
    let s = StructuralIso::swap(&w, &y);
    let back = StructuralIso::swap(&y, &w);
    let both = compose(&s.lift().unwrap(), &back.lift().unwrap()).unwrap();
    assert!(iso(both.strategy(), &copycat(&par(&w, &y)).unwrap()));
}

#[test]
fn structural_isos_check() {
    let (w, y, b) = (game_w(), game_y(), game_b());
    for s in [
        StructuralIso::rho(&w),
        StructuralIso::lambda(&b),
        StructuralIso::swap(&w, &b),
        StructuralIso::alpha(&w, &y, &b),
    ] {
        assert!(s.check().unwrap(), "{}", s.kind);
        assert!(is_strategy(&s.lift().unwrap()).unwrap().is_some());
    }
}

#[test]
fn lift_is_functorial_on_swaps() {
    let (w, b) = (game_w(), game_b());
    let f = StructuralIso::swap(&w, &b);
    let g = StructuralIso::swap(&b, &w);
    let gf = f.map.then(&g.map).unwrap();
    let direct = lift(&f.source, &g.target, &gf).unwrap();
    let composed = compose(&f.lift().unwrap(), &g.lift().unwrap()).unwrap();
    assert!(iso(composed.strategy(), &direct));
}

#[test]
fn eta_and_epsilon_shapes() {
    assert!(eta(&Esp::empty()).unwrap().inner().is_empty());
    let e = eta(&game_w()).unwrap();
    assert_eq!(e.inner().len(), 4);
    assert_eq!(e.inner().immediate_edges().len(), 2);
    let eps = epsilon(&game_y()).unwrap();
    let split = eps.split().unwrap();
    assert!(eps
        .label()
        .iter()
        .all(|&g| matches!(split.side(g), Side::Left(_))));
    assert!(is_strategy(&e).unwrap().is_some());
    assert!(is_strategy(&eps).unwrap().is_some());
}

#[test]
fn snake_on_fixture_games() {
    for a in [Esp::empty(), game_y(), game_w(), game_b()] {
        assert!(snake_check(&a).unwrap().holds());
    }
}

#[test]
fn associator_of_copycats() {
    let cc = copycat(&game_w()).unwrap();
    let a = associator(&cc, &cc, &cc).unwrap();
    assert!(a.map.is_total());
    assert_eq!(a.map.source_len(), 4);
}

#[test]
fn associator_of_mixed_factors() {
    let n = negation();
    let on_b = nondet_bool();
    let a = associator(&on_b, &n, &n).unwrap();
    assert_eq!(a.map.source_len(), 2);
}

#[test]
fn pentagon_on_negations() {
    let n = negation();
    let p = pentagon(&nondet_bool(), &n, &n, &copycat(&game_b()).unwrap()).unwrap();
    assert!(p.holds());
}

#[test]
fn triangle_on_fixtures() {
    assert!(triangle(&nondet_bool(), &negation()).unwrap().holds());
    let cc = copycat(&game_w()).unwrap();
    assert!(triangle(&cc, &cc).unwrap().holds());
}

#[test]
fn unitors_are_natural_along_a_reindexing() {
    let s = negation();
    let (moved, f) = reindex(&s, &[3, 1, 0, 2]).unwrap();
    assert!(is_strategy_iso(&s, &moved, &f.values()).unwrap());
    assert!(unitor_naturality(&s, &moved, &f).unwrap());
}

#[test]
fn snake_on_three_event_games() {
    let a = esp(&["a-", "b+", "c-"], &[], &[]).unwrap();
    assert!(snake_check(&a).unwrap().holds());
    let b = esp(&["a-", "b+", "c+"], &[("a", "b")], &[&["b", "c"]]).unwrap();
    assert!(snake_check(&b).unwrap().holds());
}

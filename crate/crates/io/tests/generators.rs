use esgame_core::fixtures;
use esgame_core::laws::{is_receptive, is_strategy};
use esgame_io::gen::{gen_esp, gen_prestrategy, gen_strategy_family, EspFlags, PreFlags};
use esgame_io::{serialize_value, Value};

#[test]
fn zero_events_is_empty() {
    assert!(gen_esp(1, 0, &EspFlags::default()).unwrap().is_empty());
}

#[test]
fn generators_are_deterministic() {
    for seed in 0..20 {
        let a = serialize_value(
            "g",
            &Value::Esp(gen_esp(seed, 5, &EspFlags::default()).unwrap()),
        );
        let b = serialize_value(
            "g",
            &Value::Esp(gen_esp(seed, 5, &EspFlags::default()).unwrap()),
        );
        assert_eq!(a, b);
        let f = |s| serialize_value("f", &Value::Strategy(gen_strategy_family(s, 3).unwrap()));
        assert_eq!(f(seed), f(seed));
    }
}

#[test]
fn guard_refuses_large_requests() {
    assert!(gen_esp(0, 100, &EspFlags::default())
        .unwrap_err()
        .is_guard());
}

#[test]
fn family_members_are_strategies() {
    for seed in 0..40 {
        let s = gen_strategy_family(seed, 3).unwrap();
        assert!(is_strategy(&s).unwrap().is_some(), "seed {seed}");
    }
}

#[test]
fn prestrategies_on_y_include_the_empty_one() {
    let y = fixtures::game_y();
    let mut empty = 0;
    for seed in 0..60 {
        let s = gen_prestrategy(seed, &y, &PreFlags::default()).unwrap();
        if s.inner().is_empty() {
            empty += 1;
            assert!(!is_receptive(&s).unwrap().holds());
        }
    }
    assert!(empty > 0);
}

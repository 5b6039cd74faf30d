use esgame_core::algebra::reindex;
use esgame_io::doc::canonicalize;
use esgame_io::dot::strategy_dot;
use esgame_io::gen::{gen_esp, gen_prestrategy, gen_strategy_family, EspFlags, PreFlags};
use esgame_io::{parse_str, serialize_value, Value};
use proptest::prelude::*;

fn round_trip(v: &Value) -> Result<(), TestCaseError> {
    let text = serialize_value("x", v);
    let back = parse_str(&text, None).unwrap();
    // With no events there is nothing to carry a polarity, so it reads back as an esp.
    if !matches!(v, Value::Structure(s) if s.is_empty()) {
        prop_assert_eq!(back.kind(), v.kind());
    }
    prop_assert_eq!(&serialize_value("x", &back), &text);
    prop_assert_eq!(canonicalize(&text, None).unwrap(), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn esps_round_trip(seed in any::<u64>(), n in 0usize..8) {
        let a = gen_esp(seed, n, &EspFlags::default()).unwrap();
        let text = serialize_value("a", &Value::Esp(a.clone()));
        let Value::Esp(back) = parse_str(&text, None).unwrap() else { panic!("esp expected") };
        prop_assert_eq!(back, a.clone());
        round_trip(&Value::Esp(a.clone()))?;
        round_trip(&Value::Structure(a.structure().clone()))?;
    }

    #[test]
    fn prestrategies_round_trip(seed in any::<u64>(), n in 0usize..5) {
        let game = gen_esp(seed, n, &EspFlags::default()).unwrap();
        let s = gen_prestrategy(seed ^ 0x5eed, &game, &PreFlags::default()).unwrap();
        let text = serialize_value("s", &Value::Strategy(s.clone()));
        let Value::Strategy(back) = parse_str(&text, None).unwrap() else { panic!("prestrategy expected") };
        prop_assert_eq!(back.inner(), s.inner());
        prop_assert_eq!(back.game(), s.game());
        round_trip(&Value::Strategy(s))?;
    }

    #[test]
    fn family_members_keep_their_split(seed in any::<u64>()) {
        let s = gen_strategy_family(seed, 3).unwrap();
        let text = serialize_value("f", &Value::Strategy(s.clone()));
        let Value::Strategy(back) = parse_str(&text, None).unwrap() else { panic!("prestrategy expected") };
        let (a, b) = (s.split().unwrap(), back.split().unwrap());
        prop_assert_eq!(&a.left, &b.left);
        prop_assert_eq!(&a.right, &b.right);
    }

    #[test]
    fn output_ignores_internal_order(seed in any::<u64>(), shuffle in any::<prop::sample::Index>()) {
        let game = gen_esp(seed, 4, &EspFlags::default()).unwrap();
        let s = gen_prestrategy(seed, &game, &PreFlags::default()).unwrap();
        let n = s.inner().len();
        prop_assume!(n > 1);
        let k = shuffle.index(n);
        let perm: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
        let (moved, _) = reindex(&s, &perm).unwrap();
        prop_assert_eq!(strategy_dot("s", &moved), strategy_dot("s", &s));
        prop_assert_eq!(serialize_value("s", &Value::Strategy(moved)), serialize_value("s", &Value::Strategy(s)));
    }
}

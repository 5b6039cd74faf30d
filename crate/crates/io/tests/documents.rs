use std::path::Path;

use esgame_core::fixtures;
use esgame_io::doc::{canonicalize, esp_doc, parse_document, strategy_doc};
use esgame_io::{parse_path, parse_str, serialize, serialize_value, DocError, Document, Value};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

#[test]
fn shipped_fixtures_are_canonical() {
    let bless = std::env::var_os("ESGAME_BLESS").is_some();
    for (file, text) in esgame_io::fixtures::documents() {
        let path = fixture_dir().join(file);
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing fixture {file}"));
        assert_eq!(on_disk, text, "{file} differs from its canonical form");
        parse_path(&path).unwrap();
    }
}

#[test]
fn vending_document_shape() {
    let Value::Esp(a) = parse_path(&fixture_dir().join("vending.esp.json")).unwrap() else {
        panic!("esp expected")
    };
    let c = a.canonical();
    assert_eq!((c.events.len(), c.prec.len(), c.conflicts.len()), (5, 4, 1));
}

#[test]
fn empty_document() {
    let text = r#"{"kind": "esp", "name": "empty", "events": []}"#;
    let Value::Esp(a) = parse_str(text, None).unwrap() else {
        panic!("esp expected")
    };
    assert!(a.is_empty());
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"kind": "esp", "name": "x", "events": [], "colour": "red"}"#;
    assert!(matches!(parse_str(text, None), Err(DocError::Schema(_))));
    let text = r#"{"kind": "esp", "name": "x", "events": [{"id": "a", "pol": "+", "note": 1}]}"#;
    assert!(matches!(parse_str(text, None), Err(DocError::Schema(_))));
}

#[test]
fn syntax_errors_carry_a_position() {
    let text = "{\n  \"kind\": \"esp\",\n  \"name\": x\n}";
    match parse_str(text, None) {
        Err(DocError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn semantic_errors_defer_to_validation() {
    let text = r#"{"kind": "esp", "name": "x", "events": [{"id": "a", "pol": "+"}, {"id": "b", "pol": "-"}],
                  "prec": [["a", "b"], ["b", "a"]]}"#;
    assert!(matches!(parse_str(text, None), Err(DocError::Semantic(_))));
}

#[test]
fn strategies_round_trip() {
    for s in [
        fixtures::negation(),
        fixtures::vending_strategy(),
        fixtures::duplicate_on_y(),
    ] {
        let text = serialize(&Document::Map(strategy_doc("s", &s)));
        let Value::Strategy(back) = parse_str(&text, None).unwrap() else {
            panic!("strategy expected")
        };
        assert!(back.isomorphism(&s).unwrap().is_some());
        assert_eq!(back.split(), s.split());
        assert_eq!(serialize_value("s", &Value::Strategy(back)), text);
    }
}

#[test]
fn path_sources_resolve_relative_to_the_document() {
    let dir = std::env::temp_dir().join(format!("esgame-doc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("y.json"),
        serialize(&Document::Esp(esp_doc("Y", &fixtures::game_y()))),
    )
    .unwrap();
    let strat = r#"{"kind": "prestrategy", "name": "o", "source": "y.json", "target": "y.json", "pairs": [["o", "o"]]}"#;
    std::fs::write(dir.join("o.json"), strat).unwrap();
    let Value::Strategy(s) = parse_path(&dir.join("o.json")).unwrap() else {
        panic!("strategy expected")
    };
    assert_eq!(s.inner().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canonicalize_sorts_everything() {
    let text = r#"{"kind": "esp", "name": "m", "events": [{"id": "tea", "pol": "+"}, {"id": "coin", "pol": "-"}],
                  "prec": [["coin", "tea"]]}"#;
    let c = canonicalize(text, None).unwrap();
    let Document::Esp(d) = parse_document(&c).unwrap() else {
        panic!("esp expected")
    };
    assert_eq!(d.events[0].id, "coin");
    assert_eq!(canonicalize(&c, None).unwrap(), c);
}

#[test]
fn maps_must_be_maps() {
    let text = r#"{"kind": "map", "name": "f",
        "source": {"kind": "esp", "name": "s", "events": [{"id": "a"}, {"id": "b"}]},
        "target": {"kind": "esp", "name": "t", "events": [{"id": "c"}]},
        "pairs": [["a", "c"], ["b", "c"]]}"#;
    assert!(matches!(parse_str(text, None), Err(DocError::Semantic(_))));
}

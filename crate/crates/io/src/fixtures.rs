//! The named example documents shipped under `fixtures/`.

use esgame_core::fixtures as fx;

use crate::doc::{serialize, serialize_value, Document, MapDocument, Source, Value};

/// File name and canonical text of every shipped example.
#[must_use]
pub fn documents() -> Vec<(&'static str, String)> {
    let (game, dealer, buyer) = fx::drug_money();
    let values: Vec<(&'static str, &'static str, Value)> = vec![
        (
            "coin_machine.json",
            "coin-machine",
            Value::Structure(fx::coin_machine()),
        ),
        (
            "coffee_machine.json",
            "coffee-machine",
            Value::Structure(fx::coffee_machine()),
        ),
        (
            "tea_machine.json",
            "tea-machine",
            Value::Structure(fx::tea_machine()),
        ),
        (
            "vending.esp.json",
            "vending-machine",
            Value::Esp(fx::vending_machine()),
        ),
        ("game_m.json", "M", Value::Esp(fx::game_m())),
        (
            "vend.strat.json",
            "vend",
            Value::Strategy(fx::vending_strategy()),
        ),
        (
            "two_coffees.strat.json",
            "two-coffees",
            Value::Strategy(fx::two_coffees()),
        ),
        ("game_b.json", "B", Value::Esp(fx::game_b())),
        (
            "nondet-bool.strat.json",
            "nondet-bool",
            Value::Strategy(fx::nondet_bool()),
        ),
        ("neg.strat.json", "neg", Value::Strategy(fx::negation())),
        ("game_w.json", "W", Value::Esp(fx::game_w())),
        (
            "done_then_click.strat.json",
            "done-then-click",
            Value::Strategy(fx::done_then_click()),
        ),
        ("game_y.json", "Y", Value::Esp(fx::game_y())),
        (
            "empty_on_y.strat.json",
            "empty-on-y",
            Value::Strategy(fx::empty_on_y()),
        ),
        (
            "duplicate_on_y.strat.json",
            "duplicate-on-y",
            Value::Strategy(fx::duplicate_on_y()),
        ),
        (
            "crossed_negatives.strat.json",
            "crossed-negatives",
            Value::Strategy(fx::crossed_negatives()),
        ),
        ("drug_money.game.json", "drug-money", Value::Structure(game)),
        ("dealer.json", "dealer", Value::Structure(dealer)),
        ("buyer.json", "buyer", Value::Structure(buyer)),
    ];
    let mut docs: Vec<(&'static str, String)> = values
        .into_iter()
        .map(|(file, name, v)| (file, serialize_value(name, &v)))
        .collect();
    for (file, name, source) in [
        ("dealer.map.json", "dealer", "dealer.json"),
        ("buyer.map.json", "buyer", "buyer.json"),
    ] {
        let by_id = MapDocument {
            kind: "map".into(),
            name: name.into(),
            source: Source::Path(source.into()),
            target: Source::Path("drug_money.game.json".into()),
            pairs: vec![
                ["Drug".into(), "Drug".into()],
                ["Money".into(), "Money".into()],
            ],
            game_split: None,
        };
        docs.push((file, serialize(&Document::Map(by_id))));
    }
    docs
}

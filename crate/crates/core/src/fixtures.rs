//! Small named games and strategies used throughout the tests and the CLI.
//!
//! Strategies on a plain game `A` are presented as `1 ⊸ A`, so they can be
//! composed with copycat directly.

use crate::error::{Error, Result};
use crate::es::{Esp, EventStructure, Polarity, PreStrategy, Split};

/// Esp from ids carrying a trailing `+` or `-`.
pub fn esp(events: &[&str], prec: &[(&str, &str)], conflicts: &[&[&str]]) -> Result<Esp> {
    let mut names = Vec::with_capacity(events.len());
    let mut pol = Vec::with_capacity(events.len());
    for e in events {
        let (name, sign) = e.split_at(e.len().saturating_sub(1));
        names.push(name);
        pol.push(
            sign.parse::<Polarity>()
                .map_err(|_| Error::InvalidId((*e).to_owned()))?,
        );
    }
    Esp::new(EventStructure::from_lists(&names, prec, conflicts)?, pol)
}

/// A strategy `A ⊸ B` whose events are labelled by game ids such as `L.x`.
pub fn strategy(inner: Esp, split: Split, labels: &[&str]) -> Result<PreStrategy> {
    let game = split.game();
    let label = labels
        .iter()
        .map(|l| game.lookup(l))
        .collect::<Result<Vec<_>>>()?;
    PreStrategy::between(inner, split, label)
}

/// A strategy `1 ⊸ A`.
pub fn on(game: &Esp, inner: Esp, labels: &[&str]) -> Result<PreStrategy> {
    let prefixed: Vec<String> = labels.iter().map(|l| format!("R.{l}")).collect();
    let refs: Vec<&str> = prefixed.iter().map(String::as_str).collect();
    strategy(inner, Split::new(Esp::empty(), game.clone()), &refs)
}

/// Nondeterministic coin machine: `coin ⇢ coffee`, `coin ⇢ tea`, `coffee ~ tea`.
#[must_use]
pub fn coin_machine() -> EventStructure {
    EventStructure::from_lists(
        &["coin", "coffee", "tea"],
        &[("coin", "coffee"), ("coin", "tea")],
        &[&["coffee", "tea"]],
    )
    .expect("valid")
}

#[must_use]
pub fn coffee_machine() -> EventStructure {
    EventStructure::from_lists(&["coin", "coffee"], &[("coin", "coffee")], &[]).expect("valid")
}

#[must_use]
pub fn tea_machine() -> EventStructure {
    EventStructure::from_lists(&["coin", "tea"], &[("coin", "tea")], &[]).expect("valid")
}

/// The vending machine with selection.
#[must_use]
pub fn vending_machine() -> Esp {
    esp(
        &["coin-", "selC-", "selT-", "coffee+", "tea+"],
        &[
            ("coin", "coffee"),
            ("coin", "tea"),
            ("selC", "coffee"),
            ("selT", "tea"),
        ],
        &[&["coffee", "tea"]],
    )
    .expect("valid")
}

/// The discrete game `M` of the vending machine interface.
#[must_use]
pub fn game_m() -> Esp {
    esp(&["coin-", "selC-", "selT-", "coffee+", "tea+"], &[], &[]).expect("valid")
}

#[must_use]
pub fn vending_strategy() -> PreStrategy {
    on(
        &game_m(),
        vending_machine(),
        &["coin", "selC", "selT", "coffee", "tea"],
    )
    .expect("valid")
}

/// Two conflicting coffees with the same causal history, both over `coffee`.
#[must_use]
pub fn two_coffees() -> PreStrategy {
    let inner = esp(
        &["coin-", "selC-", "coffee+", "coffee2+"],
        &[
            ("coin", "coffee"),
            ("selC", "coffee"),
            ("coin", "coffee2"),
            ("selC", "coffee2"),
        ],
        &[&["coffee", "coffee2"]],
    )
    .expect("valid");
    on(&game_m(), inner, &["coin", "selC", "coffee", "coffee"]).expect("valid")
}

/// `𝕎 = Click⁻ Done⁺`.
#[must_use]
pub fn game_w() -> Esp {
    esp(&["Click-", "Done+"], &[], &[]).expect("valid")
}

/// `𝕐 = o⁻`.
#[must_use]
pub fn game_y() -> Esp {
    esp(&["o-"], &[], &[]).expect("valid")
}

/// `𝔹 = tt⁺ ~ ff⁺`.
#[must_use]
pub fn game_b() -> Esp {
    esp(&["tt+", "ff+"], &[], &[&["tt", "ff"]]).expect("valid")
}

/// The nondeterministic boolean on `𝔹`.
#[must_use]
pub fn nondet_bool() -> PreStrategy {
    let inner = esp(&["tt+", "ff+"], &[], &[&["tt", "ff"]]).expect("valid");
    on(&game_b(), inner, &["tt", "ff"]).expect("valid")
}

/// Negation `𝔹 ⊸ 𝔹`: `tt₁⁻ ⇢ ff₂⁺`, `ff₁⁻ ⇢ tt₂⁺`, `tt₁ ~ ff₁`.
#[must_use]
pub fn negation() -> PreStrategy {
    let inner = esp(
        &["tt1-", "ff1-", "ff2+", "tt2+"],
        &[("tt1", "ff2"), ("ff1", "tt2")],
        &[&["tt1", "ff1"]],
    )
    .expect("valid");
    strategy(
        inner,
        Split::new(game_b(), game_b()),
        &["L.tt", "L.ff", "R.ff", "R.tt"],
    )
    .expect("valid")
}

/// `Done⁺ ⇢ Click⁻` on `𝕎`: not courteous.
#[must_use]
pub fn done_then_click() -> PreStrategy {
    let inner = esp(&["Done+", "Click-"], &[("Done", "Click")], &[]).expect("valid");
    on(&game_w(), inner, &["Done", "Click"]).expect("valid")
}

/// The empty pre-strategy on `𝕐`: not receptive.
#[must_use]
pub fn empty_on_y() -> PreStrategy {
    on(&game_y(), Esp::empty(), &[]).expect("valid")
}

/// `o⁻ ~ o⁻` on `𝕐`: acknowledges the move twice.
#[must_use]
pub fn duplicate_on_y() -> PreStrategy {
    let inner = esp(&["o-", "o2-"], &[], &[&["o", "o2"]]).expect("valid");
    on(&game_y(), inner, &["o", "o"]).expect("valid")
}

/// Receptive but not a strategy: on `⊖1 ∥ ⊖2`, each move waits for the
/// other one, in two conflicting ways.
#[must_use]
pub fn crossed_negatives() -> PreStrategy {
    let game = esp(&["n1-", "n2-"], &[], &[]).expect("valid");
    let inner = esp(
        &["a1-", "a2-", "b1-", "b2-"],
        &[("a1", "b2"), ("a2", "b1")],
        &[&["a1", "a2"]],
    )
    .expect("valid");
    on(&game, inner, &["n1", "n2", "n1", "n2"]).expect("valid")
}

/// Dealer `Money ⇢ Drug` and buyer `Drug ⇢ Money`, over two concurrent events.
#[must_use]
pub fn drug_money() -> (EventStructure, EventStructure, EventStructure) {
    let game = EventStructure::from_lists(&["Money", "Drug"], &[], &[]).expect("valid");
    let dealer =
        EventStructure::from_lists(&["Money", "Drug"], &[("Money", "Drug")], &[]).expect("valid");
    let buyer =
        EventStructure::from_lists(&["Money", "Drug"], &[("Drug", "Money")], &[]).expect("valid");
    (game, dealer, buyer)
}

//! JSON documents for esps, maps and pre-strategies.
//!
//! Unknown fields are rejected. Serialization is canonical: events sorted
//! by id, `prec` holds immediate causality sorted, `conflicts` holds the
//! canonical generators sorted, `pairs` are sorted by source id.

use std::path::{Path, PathBuf};

use esgame_core::es::{check_map, game_translation, MapVerdict, RawStructure};
use esgame_core::{EsMap, Esp, EventStructure, Polarity, PreStrategy, Split};
use serde::{Deserialize, Serialize};

use crate::error::{DocError, DocResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub id: String,
    /// `"+"` or `"-"`; absent for a plain event structure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pol: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EspDocument {
    pub kind: String,
    pub name: String,
    pub events: Vec<EventDoc>,
    #[serde(default)]
    pub prec: Vec<[String; 2]>,
    #[serde(default)]
    pub conflicts: Vec<Vec<String>>,
}

/// An esp given inline or by a path relative to the referring document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Path(String),
    Inline(Box<EspDocument>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSplit {
    pub left: Source,
    pub right: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub kind: String,
    pub name: String,
    pub source: Source,
    pub target: Source,
    pub pairs: Vec<[String; 2]>,
    /// The target is `left⊥ ∥ right`, with ids prefixed `L.` and `R.`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game_split: Option<GameSplit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Esp(EspDocument),
    Map(MapDocument),
}

/// A parsed and validated document.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Structure(EventStructure),
    Esp(Esp),
    Map {
        source: EventStructure,
        target: EventStructure,
        map: EsMap,
    },
    /// A map between esps; it must preserve polarity.
    EspMap {
        source: Esp,
        target: Esp,
        map: EsMap,
    },
    Strategy(PreStrategy),
}

impl Value {
    #[must_use]
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Structure(_) => "event structure",
            Value::Esp(_) => "esp",
            Value::Map { .. } => "map",
            Value::EspMap { .. } => "esp map",
            Value::Strategy(_) => "prestrategy",
        }
    }
}

fn syntax(e: &serde_json::Error) -> DocError {
    DocError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parse document text without resolving anything.
pub fn parse_document(text: &str) -> DocResult<Document> {
    let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| syntax(&e))?;
    let kind = raw
        .get("kind")
        .and_then(serde_json::Value::as_str)
        .ok_or_else(|| DocError::Schema("missing string field `kind`".into()))?;
    let schema = |e: serde_json::Error| DocError::Schema(e.to_string());
    match kind {
        "esp" => Ok(Document::Esp(serde_json::from_value(raw).map_err(schema)?)),
        "map" | "prestrategy" => Ok(Document::Map(serde_json::from_value(raw).map_err(schema)?)),
        other => Err(DocError::Schema(format!("unknown kind `{other}`"))),
    }
}

/// Parse and validate text; relative paths resolve against `base`.
pub fn parse_str(text: &str, base: Option<&Path>) -> DocResult<Value> {
    let loader = Loader {
        base: base.map(Path::to_path_buf),
    };
    loader.value(&parse_document(text)?)
}

/// Parse and validate a file, or standard input for `-`.
pub fn parse_path(path: &Path) -> DocResult<Value> {
    let text = read_text(path)?;
    parse_str(&text, path.parent())
}

pub(crate) fn read_text(path: &Path) -> DocResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| DocError::Io {
            path: "-".into(),
            message: e.to_string(),
        })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| DocError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

struct Loader {
    base: Option<PathBuf>,
}

enum Structured {
    Plain(EventStructure),
    Polar(Esp),
}

impl Structured {
    fn structure(&self) -> &EventStructure {
        match self {
            Structured::Plain(s) => s,
            Structured::Polar(a) => a.structure(),
        }
    }

    fn esp(self, what: &str) -> DocResult<Esp> {
        match self {
            Structured::Polar(a) => Ok(a),
            Structured::Plain(_) => Err(DocError::Schema(format!("{what} needs polarities"))),
        }
    }
}

impl Loader {
    fn value(&self, doc: &Document) -> DocResult<Value> {
        match doc {
            Document::Esp(d) => Ok(match esp_from_doc(d)? {
                Structured::Plain(s) => Value::Structure(s),
                Structured::Polar(a) => Value::Esp(a),
            }),
            Document::Map(d) => self.map(d),
        }
    }

    fn source(&self, s: &Source) -> DocResult<Structured> {
        match s {
            Source::Inline(d) => esp_from_doc(d),
            Source::Path(p) => {
                let path = match &self.base {
                    Some(b) if Path::new(p).is_relative() => b.join(p),
                    _ => PathBuf::from(p),
                };
                match parse_document(&read_text(&path)?)? {
                    Document::Esp(d) => esp_from_doc(&d),
                    Document::Map(_) => {
                        Err(DocError::Schema(format!("{p} is not an esp document")))
                    }
                }
            }
        }
    }

    fn map(&self, d: &MapDocument) -> DocResult<Value> {
        let source = self.source(&d.source)?;
        let target = self.source(&d.target)?;
        let (s, t) = (source.structure(), target.structure());
        let mut image = vec![None; s.len()];
        for [a, b] in &d.pairs {
            let (i, j) = (s.lookup(a)?, t.lookup(b)?);
            if image[i].replace(j).is_some() {
                return Err(DocError::Schema(format!("{a} is mapped twice")));
            }
        }
        match d.kind.as_str() {
            "map" => {
                let map = EsMap::new(image, t.len());
                let polar = match (&source, &target) {
                    (Structured::Polar(a), Structured::Polar(b)) => {
                        Some((a.polarities(), b.polarities()))
                    }
                    _ => None,
                };
                if let MapVerdict::NotAMap(why) = check_map(s, t, &map, polar)? {
                    return Err(DocError::Semantic(esgame_core::Error::NotAMap(why)));
                }
                let (s, t) = (s.clone(), t.clone());
                Ok(match (source, target) {
                    (Structured::Polar(a), Structured::Polar(b)) => Value::EspMap {
                        source: a,
                        target: b,
                        map,
                    },
                    _ => Value::Map {
                        source: s,
                        target: t,
                        map,
                    },
                })
            }
            _ => {
                let label = image
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| DocError::Schema(format!("{} has no label", s.id(i))))
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let inner = source.esp("a pre-strategy source")?;
                let game = target.esp("a game")?;
                let strategy = match &d.game_split {
                    None => PreStrategy::new(inner, game, label)?,
                    Some(gs) => {
                        let split = Split::new(
                            self.source(&gs.left)?.esp("a game")?,
                            self.source(&gs.right)?.esp("a game")?,
                        );
                        let translate = game_translation(&game, &split.game()).map_err(|_| {
                            DocError::Schema(
                                "target is not the game left⊥ ∥ right of game_split".into(),
                            )
                        })?;
                        PreStrategy::between(
                            inner,
                            split,
                            label.iter().map(|&g| translate[g]).collect(),
                        )?
                    }
                };
                Ok(Value::Strategy(strategy))
            }
        }
    }
}

fn esp_from_doc(d: &EspDocument) -> DocResult<Structured> {
    if d.kind != "esp" {
        return Err(DocError::Schema(format!(
            "expected kind `esp`, found `{}`",
            d.kind
        )));
    }
    if let Some(g) = d.conflicts.iter().find(|g| g.len() < 2) {
        return Err(DocError::Schema(format!(
            "conflict {g:?} has fewer than 2 events"
        )));
    }
    let raw = RawStructure {
        events: d.events.iter().map(|e| e.id.clone()).collect(),
        prec: d.prec.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
        conflicts: d.conflicts.clone(),
    };
    let structure = EventStructure::from_raw(&raw)?;
    let polar = d.events.iter().filter(|e| e.pol.is_some()).count();
    if polar == 0 && !d.events.is_empty() {
        return Ok(Structured::Plain(structure));
    }
    if polar != d.events.len() {
        return Err(DocError::Schema(
            "either every event has a polarity or none does".into(),
        ));
    }
    let mut pol = vec![Polarity::Pos; structure.len()];
    for e in &d.events {
        let p = e.pol.as_deref().expect("checked");
        if p != "+" && p != "-" {
            return Err(DocError::Schema(format!(
                "polarity of {} must be \"+\" or \"-\"",
                e.id
            )));
        }
        pol[structure.lookup(&e.id)?] = p.parse()?;
    }
    Ok(Structured::Polar(Esp::new(structure, pol)?))
}

/// Canonical document of an event structure, with optional polarities.
#[must_use]
pub fn structure_doc(name: &str, s: &EventStructure, pol: Option<&[Polarity]>) -> EspDocument {
    let c = s.canonical();
    let events = c
        .events
        .iter()
        .map(|id| EventDoc {
            id: id.clone(),
            pol: pol.map(|p| p[s.lookup(id).expect("own id")].symbol().to_owned()),
        })
        .collect();
    EspDocument {
        kind: "esp".into(),
        name: name.into(),
        events,
        prec: c.prec.into_iter().map(|(a, b)| [a, b]).collect(),
        conflicts: c.conflicts,
    }
}

#[must_use]
pub fn esp_doc(name: &str, a: &Esp) -> EspDocument {
    structure_doc(name, a.structure(), Some(a.polarities()))
}

fn sorted_pairs(
    s: &EventStructure,
    t: &EventStructure,
    image: impl Iterator<Item = (usize, usize)>,
) -> Vec<[String; 2]> {
    let mut pairs: Vec<[String; 2]> = image
        .map(|(i, j)| [s.id(i).to_string(), t.id(j).to_string()])
        .collect();
    pairs.sort();
    pairs
}

#[must_use]
pub fn strategy_doc(name: &str, sigma: &PreStrategy) -> MapDocument {
    let (s, g) = (sigma.inner(), sigma.game());
    MapDocument {
        kind: "prestrategy".into(),
        name: name.into(),
        source: Source::Inline(Box::new(esp_doc(&format!("{name}.carrier"), s))),
        target: Source::Inline(Box::new(esp_doc(&format!("{name}.game"), g))),
        pairs: sorted_pairs(s, g, sigma.label().iter().copied().enumerate()),
        game_split: sigma.split().map(|sp| GameSplit {
            left: Source::Inline(Box::new(esp_doc(&format!("{name}.left"), &sp.left))),
            right: Source::Inline(Box::new(esp_doc(&format!("{name}.right"), &sp.right))),
        }),
    }
}

#[must_use]
pub fn map_doc(
    name: &str,
    source: &EventStructure,
    target: &EventStructure,
    map: &EsMap,
) -> MapDocument {
    MapDocument {
        kind: "map".into(),
        name: name.into(),
        source: Source::Inline(Box::new(structure_doc(
            &format!("{name}.source"),
            source,
            None,
        ))),
        target: Source::Inline(Box::new(structure_doc(
            &format!("{name}.target"),
            target,
            None,
        ))),
        pairs: sorted_pairs(
            source,
            target,
            (0..source.len()).filter_map(|i| map.get(i).map(|j| (i, j))),
        ),
        game_split: None,
    }
}

#[must_use]
pub fn esp_map_doc(name: &str, source: &Esp, target: &Esp, map: &EsMap) -> MapDocument {
    let mut d = map_doc(name, source.structure(), target.structure(), map);
    d.source = Source::Inline(Box::new(esp_doc(&format!("{name}.source"), source)));
    d.target = Source::Inline(Box::new(esp_doc(&format!("{name}.target"), target)));
    d
}

/// Canonical text of a value.
#[must_use]
pub fn serialize_value(name: &str, v: &Value) -> String {
    match v {
        Value::Structure(s) => serialize(&Document::Esp(structure_doc(name, s, None))),
        Value::Esp(a) => serialize(&Document::Esp(esp_doc(name, a))),
        Value::Map {
            source,
            target,
            map,
        } => serialize(&Document::Map(map_doc(name, source, target, map))),
        Value::EspMap {
            source,
            target,
            map,
        } => serialize(&Document::Map(esp_map_doc(name, source, target, map))),
        Value::Strategy(s) => serialize(&Document::Map(strategy_doc(name, s))),
    }
}

/// Pretty JSON with a trailing newline.
#[must_use]
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

/// Re-serialize a document in canonical form, resolving and validating it.
pub fn canonicalize(text: &str, base: Option<&Path>) -> DocResult<String> {
    let doc = parse_document(text)?;
    let name = match &doc {
        Document::Esp(d) => d.name.clone(),
        Document::Map(d) => d.name.clone(),
    };
    let loader = Loader {
        base: base.map(Path::to_path_buf),
    };
    Ok(serialize_value(&name, &loader.value(&doc)?))
}

//! File formats, DOT export and seeded generators for `esgame-core`.

pub mod doc;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod gen;

pub use doc::{
    parse_path, parse_str, serialize, serialize_value, Document, EspDocument, MapDocument, Value,
};
pub use error::{DocError, DocResult};

//! Concurrent games and strategies on finite event structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`es`]: event structures, esps, configurations, maps, parallel
//!   composition, projection and isomorphism search;
//! * [`games`]: duals, copycat, the copycat functor and the Scott order;
//! * [`interaction`]: secured bijections, pullbacks, interaction, hiding and
//!   composition;
//! * [`laws`]: receptivity, courtesy, discrete fibrations, strategies and
//!   the unitors;
//! * [`algebra`]: tensor, lifting, structural isomorphisms, associators and
//!   the compact closed structure.
//!
//! Everything is a pure function of its inputs. Enumeration-heavy steps run
//! on rayon when the `parallel` feature is on (see [`par`]).

pub mod algebra;
pub mod error;
pub mod es;
pub mod fixtures;
pub mod games;
pub mod interaction;
pub mod laws;
pub mod limits;
pub mod par;
pub mod set;

pub use error::{Error, Result};
pub use es::{Configuration, EsMap, Esp, EventId, EventStructure, Polarity, PreStrategy, Split};
pub use set::EventSet;

//! Enumeration ceilings.
//!
//! The event ceiling defaults to 16 and can be overridden with the
//! `ESGAME_GUARD` environment variable or programmatically with
//! [`Limits::set_override`]. Configuration enumeration is capped at
//! `2^max_events` configurations, so a structure within the event ceiling
//! is never refused; larger derived structures are accepted as long as
//! their state space stays that small.

use std::sync::RwLock;

use crate::error::{Error, GuardKind, Result};

pub const DEFAULT_MAX_EVENTS: usize = 16;
pub const DEFAULT_MAX_PAIRS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_events: usize,
    pub max_pairs: usize,
}

static OVERRIDE: RwLock<Option<Limits>> = RwLock::new(None);

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_events: DEFAULT_MAX_EVENTS,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

impl Limits {
    /// Active limits: the override if set, else the environment, else defaults.
    #[must_use]
    pub fn current() -> Self {
        if let Some(l) = *OVERRIDE.read().unwrap_or_else(|e| e.into_inner()) {
            return l;
        }
        let mut l = Self::default();
        if let Some(n) = std::env::var("ESGAME_GUARD")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            l.max_events = n;
        }
        l
    }

    pub fn set_override(limits: Option<Limits>) {
        *OVERRIDE.write().unwrap_or_else(|e| e.into_inner()) = limits;
    }

    #[must_use]
    pub fn max_configurations(&self) -> usize {
        1usize
            .checked_shl(self.max_events.min(40) as u32)
            .unwrap_or(usize::MAX)
    }

    pub fn check_events(&self, n: usize) -> Result<()> {
        if n > self.max_events {
            return Err(Error::Guard {
                what: GuardKind::Events,
                actual: n,
                limit: self.max_events,
            });
        }
        Ok(())
    }

    pub fn check_pairs(&self, n: usize) -> Result<()> {
        if n > self.max_pairs {
            return Err(Error::Guard {
                what: GuardKind::Pairs,
                actual: n,
                limit: self.max_pairs,
            });
        }
        Ok(())
    }
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::chow::{ChowClass, ChowRing};
use crate::error::{Error, Result};

/// Named generator classes, keyed by ring name and symbol.
#[derive(Clone, Debug, Default)]
pub struct GeneratorRegistry {
    entries: BTreeMap<(String, String), ChowClass>,
}

impl GeneratorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails if the symbol is already bound in that ring.
    pub fn insert(&mut self, symbol: &str, class: ChowClass) -> Result<()> {
        let key = (class.ring().name().into(), symbol.into());
        if self.entries.contains_key(&key) {
            return Err(Error::Fixture(format!("symbol `{symbol}` already bound in ring `{}`", key.0)));
        }
        self.entries.insert(key, class);
        Ok(())
    }

    /// Binds every variable of the ring to itself.
    pub fn insert_variables(&mut self, ring: &Arc<ChowRing>) -> Result<()> {
        for v in ring.spec().vars() {
            self.insert(&v.name, ring.var(&v.name)?)?;
        }
        Ok(())
    }

    pub fn get(&self, ring: &str, symbol: &str) -> Option<&ChowClass> {
        self.entries.get(&(ring.into(), symbol.into()))
    }

    pub fn rings(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.entries.keys().map(|(r, _)| r.as_str()).collect();
        out.dedup();
        out
    }

    pub fn symbols(&self, ring: &str) -> Vec<&str> {
        self.entries.keys().filter(|(r, _)| r == ring).map(|(_, s)| s.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

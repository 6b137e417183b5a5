//! An [`Engine`] behind the optional on-disk cache.

use std::sync::atomic::{AtomicUsize, Ordering};

use braidhom_core::invariants::{conventions, Engine, Tables};
use braidhom_core::{BimoduleComplex, BraidWord, CoxeterSystem, Result, TriGradedTable};

use crate::cache::{digest, Cache};
use crate::document::SCHEMA_VERSION;

/// Hash of everything that changes the meaning of a cached value.
pub fn convention_hash() -> String {
    let c = serde_json::to_string(&conventions()).expect("conventions serialize");
    digest(format!("{SCHEMA_VERSION}|{}|{c}", env!("CARGO_PKG_VERSION")).as_bytes())
}

pub struct Pipeline {
    engine: Engine,
    minimize: bool,
    cache: Option<Cache>,
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
}

impl Pipeline {
    pub fn new(system: &CoxeterSystem, minimize: bool, cache: Option<Cache>) -> Result<Self> {
        Ok(Pipeline {
            engine: Engine::new(system)?.with_minimize(minimize),
            minimize,
            cache,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    fn key(&self, b: &BraidWord, extra: &str) -> String {
        format!("{}|{}|{}|{}|{extra}", self.engine.system().type_tag(), b, self.minimize, convention_hash())
    }

    fn lookup<T: serde::de::DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let v = self.cache.as_ref()?.load(kind, key);
        let counter = if v.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        v
    }

    pub fn complex(&self, b: &BraidWord) -> Result<BimoduleComplex> {
        let key = self.key(b, "");
        if let Some(c) = self.lookup("complex", &key) {
            log::info!("cache hit: complex of {b}");
            return Ok(c);
        }
        let c = self.engine.complex(b)?;
        if let Some(cache) = &self.cache {
            cache.store("complex", &key, &c);
        }
        Ok(c)
    }
}

impl Pipeline {
    fn cached_table(&self, b: &BraidWord, cutoff: i64) -> Option<TriGradedTable> {
        let t = self.lookup("table", &self.key(b, &cutoff.to_string()))?;
        log::info!("cache hit: table of {b} to degree {cutoff}");
        Some(t)
    }

    fn compute_table(&self, b: &BraidWord, c: &BimoduleComplex, cutoff: i64) -> Result<TriGradedTable> {
        let t = self.engine.table_of(c, cutoff)?;
        if let Some(cache) = &self.cache {
            cache.store("table", &self.key(b, &cutoff.to_string()), &t);
        }
        Ok(t)
    }

    /// The table of `b`, whose complex `c` is already at hand.
    pub fn table_from(&self, b: &BraidWord, c: &BimoduleComplex, cutoff: i64) -> Result<TriGradedTable> {
        match self.cached_table(b, cutoff) {
            Some(t) => Ok(t),
            None => self.compute_table(b, c, cutoff),
        }
    }
}

impl Tables for Pipeline {
    fn system(&self) -> &CoxeterSystem {
        self.engine.system()
    }

    fn table(&self, b: &BraidWord, cutoff: i64) -> Result<TriGradedTable> {
        match self.cached_table(b, cutoff) {
            Some(t) => Ok(t),
            None => self.compute_table(b, &self.complex(b)?, cutoff),
        }
    }
}

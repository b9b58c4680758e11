use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_algebra::Index;

use super::{Ball, BallRecord, PrecisionConfig};

/// Concurrent map from admissible indices to certified values.
///
/// Inserts are last-writer-wins; values for one key are identical for a
/// fixed configuration because evaluation is deterministic.
#[derive(Debug, Default)]
pub struct ZetaCache {
    map: RwLock<HashMap<Index, Ball>>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    index: Index,
    #[serde(flatten)]
    value: BallRecord,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    config: PrecisionConfig,
    entries: Vec<CacheEntry>,
}

impl ZetaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: &Index) -> Option<Ball> {
        self.map.read().unwrap().get(k).cloned()
    }

    pub fn insert(&self, k: Index, v: Ball) {
        self.map.write().unwrap().insert(k, v);
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot as JSON, tagged with the configuration that produced it.
    pub fn to_json(&self, cfg: &PrecisionConfig) -> String {
        let map = self.map.read().unwrap();
        let mut entries: Vec<CacheEntry> = map
            .iter()
            .map(|(k, v)| CacheEntry { index: k.clone(), value: BallRecord::from(v) })
            .collect();
        entries.sort_by(|a, b| a.index.cmp(&b.index));
        serde_json::to_string_pretty(&CacheFile { config: *cfg, entries }).expect("serializable")
    }

    /// Loads a snapshot written under the same configuration. Entries whose
    /// bound exceeds the tolerance are skipped.
    pub fn from_json(json: &str, cfg: &PrecisionConfig) -> Result<Self> {
        let file: CacheFile =
            serde_json::from_str(json).map_err(|e| Error::parse(format!("cache file: {e}")))?;
        if file.config != *cfg {
            return Err(Error::domain("cache file was written under a different configuration"));
        }
        let cache = ZetaCache::new();
        for e in file.entries {
            if !e.index.is_admissible() {
                return Err(Error::domain(format!("cache entry ζ({}) is not admissible", e.index)));
            }
            let ball = e.value.to_ball(cfg.prec_bits)?;
            if ball.rad() <= cfg.tolerance {
                cache.insert(e.index, ball);
            }
        }
        Ok(cache)
    }
}

//! One JSON file per (p, k, polynomial, mode), named by the SHA-256 of the key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{CanonicalForm, IsoMode};
use crate::error::Result;

/// Bumped whenever the entry layout or the canonical form encoding changes.
pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "FIELDGRAPH_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub p: u32,
    pub k: usize,
    pub polynomial: String,
    pub mode: IsoMode,
}

impl CacheKey {
    /// `p|k|polynomial|mode`, the string that is hashed.
    pub fn text(&self) -> String {
        format!("{}|{}|{}|{}", self.p, self.k, self.polynomial, self.mode.tag())
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.text().as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: String,
    /// hex of the canonical form bytes
    pub form: String,
    pub aut_order: String,
}

impl CacheEntry {
    pub fn new(key: &CacheKey, form: &CanonicalForm, aut_order: &str) -> Self {
        CacheEntry {
            version: CACHE_VERSION,
            key: key.text(),
            form: form.to_hex(),
            aut_order: aut_order.to_string(),
        }
    }

    pub fn canonical_form(&self) -> Option<CanonicalForm> {
        CanonicalForm::from_bytes(hex::decode(&self.form).ok()?).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `explicit` if given, else the directory in FIELDGRAPH_CACHE, else none.
    pub fn resolve(explicit: Option<&Path>) -> Result<Option<Self>> {
        match explicit {
            Some(dir) => Cache::new(dir).map(Some),
            None => match std::env::var_os(CACHE_ENV) {
                Some(dir) if !dir.is_empty() => Cache::new(PathBuf::from(dir)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// A valid entry for `key`; stale versions, foreign keys and unreadable
    /// files all count as misses.
    pub fn load(&self, key: &CacheKey) -> Option<CacheEntry> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        let valid = entry.version == CACHE_VERSION
            && entry.key == key.text()
            && entry.canonical_form().is_some()
            && !entry.aut_order.is_empty()
            && entry.aut_order.bytes().all(|b| b.is_ascii_digit());
        valid.then_some(entry)
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn store(&self, key: &CacheKey, entry: &CacheEntry) -> Result<()> {
        let path = self.path(key);
        let tmp = self.dir.join(format!(
            ".{}.{}.tmp",
            key.digest(),
            std::process::id()
        ));
        let body = serde_json::to_vec_pretty(entry).map_err(|e| std::io::Error::other(e.to_string()))?;
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&body)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, WeightedGraph};

    fn key(mode: IsoMode) -> CacheKey {
        CacheKey {
            p: 3,
            k: 2,
            polynomial: "x^2 + 1".into(),
            mode,
        }
    }

    #[test]
    fn round_trip_and_mode_separation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let form = canonical_form(&WeightedGraph::from_pairs(2, [(0, 1, 2)]));
        let k = key(IsoMode::Default);
        let entry = CacheEntry::new(&k, &form, "8");
        cache.store(&k, &entry).unwrap();
        assert_eq!(cache.load(&k), Some(entry));
        assert_eq!(cache.load(&key(IsoMode::Strict)), None);
        assert_ne!(cache.path(&k), cache.path(&key(IsoMode::Simple)));
    }

    #[test]
    fn stale_or_corrupt_entries_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let form = canonical_form(&WeightedGraph::new(1));
        let k = key(IsoMode::Default);
        let mut entry = CacheEntry::new(&k, &form, "8");
        entry.version = CACHE_VERSION + 1;
        cache.store(&k, &entry).unwrap();
        assert_eq!(cache.load(&k), None);
        fs::write(cache.path(&k), b"{not json").unwrap();
        assert_eq!(cache.load(&k), None);
    }
}

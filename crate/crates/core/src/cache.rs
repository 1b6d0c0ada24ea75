// SPDX-License-Identifier: Apache-2.0

//! Persistent memo of class-group summaries, one JSON object per line.
//!
//! The cache is never a source of truth: entries written by another tool
//! version are ignored, unreadable lines are skipped with a warning, and a
//! missing entry is simply recomputed.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classgroup::{class_group, ClassGroupSummary};
use crate::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub disc: i64,
    pub h: u64,
    pub invariant_factors: Vec<u64>,
    pub r3: u32,
    pub narrow_h: Option<u64>,
    pub tool_version: String,
}

impl CacheEntry {
    pub fn from_summary(s: &ClassGroupSummary) -> Result<Self> {
        let disc = s
            .disc
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("{} does not fit the cache key", s.disc)))?;
        Ok(CacheEntry {
            disc,
            h: s.h,
            invariant_factors: s.invariant_factors.clone(),
            r3: s.r3,
            narrow_h: s.narrow_h,
            tool_version: TOOL_VERSION.to_string(),
        })
    }

    pub fn to_summary(&self) -> ClassGroupSummary {
        ClassGroupSummary {
            disc: BigInt::from(self.disc),
            h: self.h,
            invariant_factors: self.invariant_factors.clone(),
            r3: self.r3,
            narrow_h: self.narrow_h,
        }
    }
}

/// In-memory view of the cache file. Reads are concurrent; writes to the
/// map and to the file are serialized.
#[derive(Debug)]
pub struct ClassGroupCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<i64, CacheEntry>>,
    file_lock: Mutex<()>,
}

impl ClassGroupCache {
    /// A cache that lives only in memory.
    pub fn in_memory() -> Self {
        ClassGroupCache {
            path: None,
            entries: RwLock::new(BTreeMap::new()),
            file_lock: Mutex::new(()),
        }
    }

    /// Loads `path` if it exists. Corrupt lines are skipped with a warning.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(fs::File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => {
                        log::warn!("{}:{}: unreadable cache line ({e}); ignored", path.display(), i + 1);
                        continue;
                    }
                };
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheEntry>(&line) {
                    Ok(e) => {
                        entries.insert(e.disc, e);
                    }
                    Err(e) => {
                        log::warn!("{}:{}: corrupt cache entry ({e}); ignored", path.display(), i + 1)
                    }
                }
            }
        }
        Ok(ClassGroupCache {
            path: Some(path),
            entries: RwLock::new(entries),
            file_lock: Mutex::new(()),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// The entry for `disc`, unless absent or written by another version.
    pub fn get(&self, disc: i64) -> Option<CacheEntry> {
        let entries = self.entries.read().expect("cache lock poisoned");
        entries
            .get(&disc)
            .filter(|e| e.tool_version == TOOL_VERSION)
            .cloned()
    }

    /// Last writer wins.
    pub fn put(&self, entry: CacheEntry) {
        let mut entries = self.entries.write().expect("cache lock poisoned");
        entries.insert(entry.disc, entry);
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes every entry, sorted by `disc`, to a temporary file next to the
    /// cache and renames it over the cache.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let _guard = self.file_lock.lock().expect("cache file lock poisoned");
        let snapshot: Vec<CacheEntry> = self
            .entries
            .read()
            .expect("cache lock poisoned")
            .values()
            .cloned()
            .collect();
        let mut tmp_name = path.as_os_str().to_owned();
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = PathBuf::from(tmp_name);
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            for e in &snapshot {
                serde_json::to_writer(&mut w, e)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Cached summary for `disc`, computing and storing it on a miss.
    pub fn class_group(&self, disc: &BigInt) -> Result<ClassGroupSummary> {
        if let Some(e) = disc.to_i64().and_then(|d| self.get(d)) {
            return Ok(e.to_summary());
        }
        let s = class_group(disc)?;
        if let Ok(e) = CacheEntry::from_summary(&s) {
            self.put(e);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(disc: i64) -> CacheEntry {
        CacheEntry::from_summary(&class_group(&BigInt::from(disc)).unwrap()).unwrap()
    }

    #[test]
    fn put_then_get() {
        let c = ClassGroupCache::in_memory();
        let e = entry(-31);
        c.put(e.clone());
        assert_eq!(c.get(-31), Some(e));
        assert_eq!(c.get(-23), None);
    }

    #[test]
    fn version_mismatch_is_a_miss() {
        let c = ClassGroupCache::in_memory();
        let mut e = entry(-31);
        e.tool_version = "0.0.0-other".into();
        c.put(e);
        assert_eq!(c.get(-31), None);
    }

    #[test]
    fn file_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let c = ClassGroupCache::open(&path).unwrap();
        for d in [-31, 93, -87] {
            c.class_group(&BigInt::from(d)).unwrap();
        }
        c.flush().unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        fs::write(&path, format!("{text}{{not json\n")).unwrap();
        let c2 = ClassGroupCache::open(&path).unwrap();
        assert_eq!(c2.len(), 3);
        assert_eq!(c2.get(-87), Some(entry(-87)));
        // a memo hit equals recomputation
        for d in [-31, 93, -87] {
            assert_eq!(
                c2.class_group(&BigInt::from(d)).unwrap(),
                class_group(&BigInt::from(d)).unwrap()
            );
        }
    }

    #[test]
    fn concurrent_puts_agree() {
        let c = ClassGroupCache::in_memory();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| c.put(entry(-23)));
            }
        });
        assert_eq!(c.get(-23), Some(entry(-23)));
    }
}

//! Append-only JSON-lines store of per-instance point counts.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curves::{count_points_formula_model, CurveInstance};
use crate::error::Result;
use crate::verify::{instance_f_values, CountSource};
use crate::zeta::lpoly_from_counts;

pub const SCHEMA_VERSION: u32 = 1;
pub const FILE_NAME: &str = "instances.jsonl";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub l: u64,
    pub exponents: (u64, u64, u64),
    pub q: u64,
    pub z: u64,
}

impl From<&CurveInstance> for CacheKey {
    fn from(c: &CurveInstance) -> Self {
        CacheKey {
            l: c.l,
            exponents: c.exponents,
            q: c.q,
            z: c.z,
        }
    }
}

/// One complete instance: counts `N_1..N_g`, the L-polynomial and the
/// F-values over `F_q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub key: CacheKey,
    pub counts: Vec<u64>,
    pub lpoly: Vec<i128>,
    pub f_values: Value,
    pub created_unix: u64,
}

/// Counts served from the cache file when a complete record exists.
/// Records are only written once all `g` counts are known, so each key
/// appears at most once per file.
pub struct CachedCounts {
    path: PathBuf,
    records: Mutex<HashMap<CacheKey, CacheRecord>>,
    writer: Mutex<File>,
}

impl CachedCounts {
    pub fn open(dir: &Path) -> std::io::Result<CachedCounts> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut records = HashMap::new();
        if let Ok(f) = File::open(&path) {
            for line in BufReader::new(f).lines() {
                let line = line?;
                // stale versions and torn lines are skipped, never misread
                let Ok(v) = serde_json::from_str::<Value>(&line) else {
                    continue;
                };
                if v.get("schema_version").and_then(Value::as_u64) != Some(SCHEMA_VERSION as u64) {
                    continue;
                }
                if let Ok(r) = serde_json::from_value::<CacheRecord>(v) {
                    records.entry(r.key).or_insert(r);
                }
            }
        }
        let writer = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(CachedCounts {
            path,
            records: Mutex::new(records),
            writer: Mutex::new(writer),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, c: &CurveInstance, kmax: u32) -> Option<Vec<u64>> {
        let recs = self.records.lock().unwrap();
        let r = recs.get(&CacheKey::from(c))?;
        (r.counts.len() >= kmax as usize).then(|| r.counts[..kmax as usize].to_vec())
    }

    fn store(&self, c: &CurveInstance, counts: &[u64]) -> Result<()> {
        let g = counts.len();
        let lpoly = lpoly_from_counts(counts, c.q, g)?.coeffs;
        let f_values = serde_json::to_value(instance_f_values(c, 1)?).expect("serializable");
        let rec = CacheRecord {
            schema_version: SCHEMA_VERSION,
            key: CacheKey::from(c),
            counts: counts.to_vec(),
            lpoly,
            f_values,
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        };
        let mut recs = self.records.lock().unwrap();
        if recs.contains_key(&rec.key) {
            return Ok(());
        }
        let line = serde_json::to_string(&rec).expect("serializable");
        {
            let mut w = self.writer.lock().unwrap();
            // a failed write only costs a recomputation later
            let _ = writeln!(w, "{line}").and_then(|_| w.flush());
        }
        recs.insert(rec.key, rec);
        Ok(())
    }
}

impl CountSource for CachedCounts {
    fn count(&self, c: &CurveInstance, k: u32) -> Result<u64> {
        match self.lookup(c, k) {
            Some(v) => Ok(v[k as usize - 1]),
            None => count_points_formula_model(c, k),
        }
    }

    fn counts(&self, c: &CurveInstance, kmax: u32) -> Result<Vec<u64>> {
        if let Some(v) = self.lookup(c, kmax) {
            return Ok(v);
        }
        let counts = (1..=kmax)
            .map(|k| count_points_formula_model(c, k))
            .collect::<Result<Vec<_>>>()?;
        if kmax as u64 == c.genus()? {
            self.store(c, &counts)?;
        }
        Ok(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_persist_and_stale_lines_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let c = CurveInstance::from_ms(3, 1, 2, 7, 3).unwrap();
        let direct = (1..=2)
            .map(|k| count_points_formula_model(&c, k).unwrap())
            .collect::<Vec<_>>();
        {
            let cache = CachedCounts::open(dir.path()).unwrap();
            assert!(cache.is_empty());
            assert_eq!(cache.counts(&c, 2).unwrap(), direct);
            assert_eq!(cache.len(), 1);
        }
        let path = dir.path().join(FILE_NAME);
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        writeln!(f, "{{\"schema_version\":0,\"key\":{{\"l\":3}}}}").unwrap();
        writeln!(f, "not json").unwrap();
        let cache = CachedCounts::open(dir.path()).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.count(&c, 2).unwrap(), direct[1]);
        // a repeat request does not append a duplicate key
        cache.counts(&c, 2).unwrap();
        let lines = fs::read_to_string(&path).unwrap();
        assert_eq!(lines.lines().filter(|l| l.contains("\"schema_version\":1")).count(), 1);
    }
}

//! Content-addressed report cache.
//!
//! Entries are `<id>.json`, `<id>.1.json`, ... where `id` hashes the cache
//! key. Each file starts with `cospec-cache/1 <id> <sha256 of body>` and the
//! body is the report JSON. Entries are never overwritten; a corrupt slot is
//! skipped with a warning and the next free slot is used.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::CensusReport;
use crate::genreg::GenSpec;

const MAGIC: &str = "cospec-cache/1";
const MAX_SLOTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheKey {
    pub spec: GenSpec,
    pub source_digest: String,
    pub full_annotation: bool,
}

impl CacheKey {
    pub fn id(&self) -> String {
        let json = serde_json::to_vec(self).expect("key serializes");
        hex::encode(Sha256::digest(json))
    }
}

#[derive(Debug, Clone)]
pub struct ReportCache {
    dir: PathBuf,
}

impl ReportCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<ReportCache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(ReportCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn slot(&self, id: &str, i: usize) -> PathBuf {
        if i == 0 {
            self.dir.join(format!("{id}.json"))
        } else {
            self.dir.join(format!("{id}.{i}.json"))
        }
    }

    /// First intact entry for `key`, if any.
    pub fn get(&self, key: &CacheKey) -> Option<CensusReport> {
        let id = key.id();
        for i in 0..MAX_SLOTS {
            let path = self.slot(&id, i);
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
                Err(e) => {
                    log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                    continue;
                }
            };
            match decode(&id, key, &text) {
                Some(r) => return Some(r),
                None => log::warn!("ignoring corrupt cache entry {}", path.display()),
            }
        }
        None
    }

    /// Stores `report` in the first free slot and returns its path.
    pub fn put(&self, key: &CacheKey, report: &CensusReport) -> io::Result<PathBuf> {
        let id = key.id();
        let body = report.to_json(false);
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        for i in 0..MAX_SLOTS {
            let path = self.slot(&id, i);
            if path.exists() {
                continue;
            }
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            writeln!(tmp, "{MAGIC} {id} {digest}")?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            match tmp.persist_noclobber(&path) {
                Ok(_) => return Ok(path),
                Err(e) if e.error.kind() == io::ErrorKind::AlreadyExists => continue,
                Err(e) => return Err(e.error),
            }
        }
        Err(io::Error::other("all cache slots are taken"))
    }
}

fn decode(id: &str, key: &CacheKey, text: &str) -> Option<CensusReport> {
    let (header, body) = text.split_once('\n')?;
    let mut parts = header.split(' ');
    if parts.next()? != MAGIC || parts.next()? != id {
        return None;
    }
    if parts.next()? != hex::encode(Sha256::digest(body.as_bytes())) || parts.next().is_some() {
        return None;
    }
    let report = CensusReport::from_json(body).ok()?;
    let matches = report.spec == key.spec
        && report.source.digest == key.source_digest
        && report.full_annotation == key.full_annotation;
    matches.then_some(report)
}

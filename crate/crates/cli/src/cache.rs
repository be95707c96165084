//! Content-addressed result cache: entries are immutable JSON files keyed by
//! a digest of (canonical config, command, canonical arguments), written
//! atomically via a temp file and rename.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "QSHUFFLE_CACHE_DIR";
pub const CACHE_DEFAULT: &str = ".qshuffle-cache";

#[derive(Serialize, Deserialize)]
pub struct CacheEntry {
    pub exit_code: i32,
    pub report: serde_json::Value,
}

pub fn cache_dir() -> PathBuf {
    std::env::var(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|_| PathBuf::from(CACHE_DEFAULT))
}

pub fn key(config_canonical: &str, command: &str, args_canonical: &str) -> String {
    let mut h = Sha256::new();
    h.update(config_canonical.as_bytes());
    h.update([0]);
    h.update(command.as_bytes());
    h.update([0]);
    h.update(args_canonical.as_bytes());
    hex::encode(h.finalize())
}

pub fn lookup(key: &str) -> Option<CacheEntry> {
    let path = cache_dir().join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(key: &str, entry: &CacheEntry) {
    let dir = cache_dir();
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let path = dir.join(format!("{key}.json"));
    if path.exists() {
        return; // entries are immutable
    }
    let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
    let Ok(text) = serde_json::to_string(entry) else {
        return;
    };
    if std::fs::write(&tmp, text).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}

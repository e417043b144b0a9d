use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Bumped whenever a change could alter any cached value.
pub const ENGINE_VERSION: &str = "autfi-engine-1";

/// Write-once on-disk cache of JSON values, keyed by a SHA-256 of the inputs.
///
/// Entries are written to a temporary file and moved into place without clobbering, so
/// concurrent writers of the same key leave exactly one complete entry.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
    model_hash: String,
}

impl Cache {
    pub fn new(dir: Option<&Path>, model_bytes: &[u8]) -> std::io::Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d)?;
        }
        Ok(Self {
            dir: dir.map(Path::to_path_buf),
            model_hash: sha256_hex(model_bytes),
        })
    }

    pub fn model_hash(&self) -> &str {
        &self.model_hash
    }

    pub fn key(&self, parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(ENGINE_VERSION.as_bytes());
        h.update([0]);
        h.update(self.model_hash.as_bytes());
        for p in parts {
            h.update([0]);
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let bytes = fs::read(self.path(key)?).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return Ok(());
        };
        if path.exists() {
            return Ok(());
        }
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, value)?;
        tmp.flush()?;
        match tmp.persist_noclobber(&path) {
            Ok(_) => Ok(()),
            Err(e) if path.exists() => {
                drop(e);
                Ok(())
            }
            Err(e) => Err(e.error),
        }
    }

    pub fn get_or_compute<T, E>(&self, parts: &[&str], f: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let key = self.key(parts);
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = f()?;
        if let Err(e) = self.put(&key, &v) {
            eprintln!("warning: cache write failed for {key}: {e}");
        }
        Ok(v)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

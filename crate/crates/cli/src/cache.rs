//! On-disk cache of minimized complexes and tables.
//!
//! Each entry is one file: a hex SHA-256 of the payload on the first line,
//! then the JSON payload. A checksum or parse failure is treated as a miss.
//! Writers hold an exclusive advisory lock on `<dir>/.lock`, readers a
//! shared one.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "BRAIDHOM_CACHE_DIR";

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `explicit`, else the environment override, else no cache.
    pub fn resolve(explicit: Option<&Path>) -> Option<PathBuf> {
        explicit.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn lock(&self) -> io::Result<File> {
        OpenOptions::new().create(true).truncate(false).write(true).open(self.dir.join(".lock"))
    }

    pub fn path(&self, kind: &str, key: &str) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", digest(key.as_bytes())))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let path = self.path(kind, key);
        let text = {
            let lock = self.lock().ok()?;
            lock.lock_shared().ok()?;
            fs::read_to_string(&path).ok()?
        };
        let Some((sum, payload)) = text.split_once('\n') else {
            log::warn!("cache entry {} is truncated, recomputing", path.display());
            return None;
        };
        if digest(payload.as_bytes()) != sum {
            log::warn!("cache entry {} fails its checksum, recomputing", path.display());
            return None;
        }
        match serde_json::from_str(payload) {
            Ok(v) => Some(v),
            Err(e) => {
                log::warn!("cache entry {} does not parse ({e}), recomputing", path.display());
                None
            }
        }
    }

    /// Failures are logged and otherwise ignored.
    pub fn store<T: Serialize>(&self, kind: &str, key: &str, value: &T) {
        if let Err(e) = self.try_store(kind, key, value) {
            log::warn!("could not write cache entry: {e}");
        }
    }

    fn try_store<T: Serialize>(&self, kind: &str, key: &str, value: &T) -> io::Result<()> {
        let payload = serde_json::to_string(value)?;
        let path = self.path(kind, key);
        let lock = self.lock()?;
        lock.lock()?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = File::create(&tmp)?;
            writeln!(f, "{}", digest(payload.as_bytes()))?;
            f.write_all(payload.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.load::<Vec<i64>>("t", "k"), None);
        c.store("t", "k", &vec![1i64, 2, 3]);
        assert_eq!(c.load::<Vec<i64>>("t", "k"), Some(vec![1, 2, 3]));
        let p = c.path("t", "k");
        let text = fs::read_to_string(&p).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&p, text).unwrap();
        assert_eq!(c.load::<Vec<i64>>("t", "k"), None);
        fs::write(&p, "garbage").unwrap();
        assert_eq!(c.load::<Vec<i64>>("t", "k"), None);
    }
}

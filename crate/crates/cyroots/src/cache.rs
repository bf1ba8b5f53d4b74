//! Content-addressed store for computed result payloads.
//!
//! Entries live in `$CYROOTS_CACHE_DIR` (default `.cyroots-cache`). Each file starts with a
//! header line carrying the digest of its payload; entries whose digest does not match
//! are treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::report::sha256_hex;

pub const CACHE_ENV: &str = "CYROOTS_CACHE_DIR";
const HEADER: &str = "cyroots-cache/1";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
}

impl Cache {
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: Some(dir.into()) }
    }

    pub fn from_env() -> Cache {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if d.is_empty() => Cache::disabled(),
            Some(d) => Cache::at(d),
            None => Cache::at(".cyroots-cache"),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Key over the operation name and its canonicalized inputs.
    pub fn key(op: &str, parts: &[&str]) -> String {
        let mut buf = String::from(op);
        for p in parts {
            buf.push('\u{1f}');
            buf.push_str(&p.len().to_string());
            buf.push(':');
            buf.push_str(p);
        }
        sha256_hex(buf.as_bytes())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.entry", key)))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let (head, payload) = text.split_once('\n')?;
        let digest = head.strip_prefix(HEADER)?.trim();
        (digest == sha256_hex(payload.as_bytes())).then(|| payload.to_string())
    }

    /// Writes through a temporary file in the cache directory and renames it into place.
    /// Failures are ignored; the caller recomputes next time.
    pub fn put(&self, key: &str, payload: &str) {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else { return };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            writeln!(tmp, "{} {}", HEADER, sha256_hex(payload.as_bytes()))?;
            tmp.write_all(payload.as_bytes())?;
            tmp.persist(&path).map_err(|e| e.error)?;
            Ok(())
        };
        let _ = write();
    }

    /// Returns the cached payload or computes, stores and returns it. `Err` payloads are not stored.
    pub fn get_or_compute<E>(&self, key: &str, compute: impl FnOnce() -> Result<String, E>) -> Result<(String, Lookup), E> {
        if let Some(p) = self.get(key) {
            return Ok((p, Lookup::Hit));
        }
        let p = compute()?;
        self.put(key, &p);
        Ok((p, Lookup::Miss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_and_corruption() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::at(d.path());
        let k = Cache::key("op", &["a", "b"]);
        assert_ne!(k, Cache::key("op", &["ab"]));
        assert_eq!(c.get(&k), None);
        c.put(&k, "payload\nline two");
        assert_eq!(c.get(&k).as_deref(), Some("payload\nline two"));
        let p = d.path().join(format!("{}.entry", k));
        let mut text = fs::read_to_string(&p).unwrap();
        text.push('x');
        fs::write(&p, text).unwrap();
        assert_eq!(c.get(&k), None);
        let (v, l) = c.get_or_compute::<()>(&k, || Ok("fresh".into())).unwrap();
        assert_eq!((v.as_str(), l), ("fresh", Lookup::Miss));
        let (_, l) = c.get_or_compute::<()>(&k, || Ok("other".into())).unwrap();
        assert_eq!(l, Lookup::Hit);
        assert_eq!(Cache::disabled().get(&k), None);
    }
}

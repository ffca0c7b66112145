//! Content-addressed cache of precomputations. Each record is a header line
//! "hmf-cache <version> <sha256 of body>" followed by a JSON body; records are
//! written to a temporary file and renamed into place.

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

/// Bump to invalidate every existing record.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup<T> {
    Hit(T),
    Miss,
    /// present but failed its checksum or did not parse; recompute
    Corrupt,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest(s: &str) -> String {
    hex(&Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// Key of a record of the given kind over the given content description.
    pub fn key(kind: &str, material: &str) -> String {
        digest(&format!("v{CACHE_VERSION}\n{kind}\n{material}"))
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{kind}-{key}.rec")))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Lookup<T> {
        let Some(path) = self.path(kind, key) else { return Lookup::Miss };
        let Ok(text) = fs::read_to_string(&path) else { return Lookup::Miss };
        let Some((header, body)) = text.split_once('\n') else { return Lookup::Corrupt };
        let parts: Vec<&str> = header.split(' ').collect();
        if parts.len() != 3 || parts[0] != "hmf-cache" {
            return Lookup::Corrupt;
        }
        if parts[1] != CACHE_VERSION.to_string() {
            return Lookup::Miss;
        }
        if parts[2] != digest(body) {
            return Lookup::Corrupt;
        }
        match serde_json::from_str(body) {
            Ok(v) => Lookup::Hit(v),
            Err(_) => Lookup::Corrupt,
        }
    }

    pub fn store<T: Serialize>(&self, kind: &str, key: &str, value: &T) -> std::io::Result<()> {
        let Some(path) = self.path(kind, key) else { return Ok(()) };
        let dir = path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let body = serde_json::to_string(value).map_err(std::io::Error::other)?;
        let text = format!("hmf-cache {CACHE_VERSION} {}\n{body}", digest(&body));
        let tmp = dir.join(format!(".{kind}-{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()));
        let k = Cache::key("demo", "x");
        assert_eq!(c.load::<Vec<u32>>("demo", &k), Lookup::Miss);
        c.store("demo", &k, &vec![1u32, 2, 3]).unwrap();
        assert_eq!(c.load::<Vec<u32>>("demo", &k), Lookup::Hit(vec![1, 2, 3]));
        let p = dir.path().join(format!("demo-{k}.rec"));
        let text = fs::read_to_string(&p).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&p, text).unwrap();
        assert_eq!(c.load::<Vec<u32>>("demo", &k), Lookup::Corrupt);
        let old = fs::read_to_string(&p).unwrap().replacen("hmf-cache 1 ", "hmf-cache 0 ", 1);
        fs::write(&p, old).unwrap();
        assert_eq!(c.load::<Vec<u32>>("demo", &k), Lookup::Miss);
        assert_ne!(Cache::key("a", "x"), Cache::key("b", "x"));
        assert_eq!(Cache::disabled().load::<u32>("demo", &k), Lookup::Miss);
    }
}

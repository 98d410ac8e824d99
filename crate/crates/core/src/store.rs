//! Persistent memo of principal Möbius values.
//!
//! File layout (plain text):
//!
//! ```text
//! muposet v1 canonical=1
//! 1<TAB>1
//! 12<TAB>-1
//! 132<TAB>1
//! ```
//!
//! One `<perm><TAB><mu>` line per entry, sorted by length and then by value
//! sequence.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::{canonical, Permutation};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "MUPOSET_CACHE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCache {
    canonical: bool,
    entries: HashMap<Permutation, i64>,
}

impl Default for MuCache {
    fn default() -> Self {
        Self::new()
    }
}

impl MuCache {
    /// Empty cache keyed by symmetry-class representative.
    pub fn new() -> Self {
        MuCache { canonical: true, entries: HashMap::new() }
    }

    /// Empty cache keyed by the permutation itself.
    pub fn non_canonical() -> Self {
        MuCache { canonical: false, entries: HashMap::new() }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn key(&self, pi: &Permutation) -> Permutation {
        if self.canonical {
            canonical(pi)
        } else {
            pi.clone()
        }
    }

    pub fn get(&self, pi: &Permutation) -> Option<i64> {
        if self.entries.is_empty() {
            return None;
        }
        self.entries.get(&self.key(pi)).copied()
    }

    /// Inserts `μ(π)`. Re-inserting the same value is a no-op; a different
    /// value is a conflict.
    pub fn put(&mut self, pi: &Permutation, mu: i64) -> Result<()> {
        let key = self.key(pi);
        self.insert_key(key, mu)
    }

    fn insert_key(&mut self, key: Permutation, mu: i64) -> Result<()> {
        match self.entries.get(&key) {
            Some(&stored) if stored != mu => Err(Error::CacheConflict {
                key: key.to_string(),
                stored,
                new: mu,
            }),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(key, mu);
                Ok(())
            }
        }
    }

    /// Folds another cache (e.g. a worker's private shard) into this one.
    pub fn merge(&mut self, other: MuCache) -> Result<()> {
        if other.canonical != self.canonical {
            return Err(Error::CacheFormat("merging caches with different canonicalization".into()));
        }
        for (k, v) in other.entries {
            self.insert_key(k, v)?;
        }
        Ok(())
    }

    /// Entries in file order.
    pub fn sorted_entries(&self) -> Vec<(&Permutation, i64)> {
        let mut out: Vec<_> = self.entries.iter().map(|(k, &v)| (k, v)).collect();
        out.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        out
    }

    pub fn write_to<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        writeln!(w, "muposet v{FORMAT_VERSION} canonical={}", self.canonical as u8)?;
        for (k, v) in self.sorted_entries() {
            writeln!(w, "{k}\t{v}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: R) -> Result<Self> {
        let mut lines = BufReader::new(r).lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::CacheFormat("missing header".into()))?;
        let canonical = parse_header(&header)?;
        let mut cache = MuCache { canonical, entries: HashMap::new() };
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let bad = || Error::CacheFormat(format!("line {}: {line:?}", lineno + 2));
            let (perm, mu) = line.split_once('\t').ok_or_else(bad)?;
            let key: Permutation = perm.parse().map_err(|_| bad())?;
            let mu: i64 = mu.parse().map_err(|_| bad())?;
            if canonical && crate::perm::canonical(&key) != key {
                return Err(Error::CacheFormat(format!(
                    "line {}: key {key} is not canonical",
                    lineno + 2
                )));
            }
            cache.insert_key(key, mu)?;
        }
        Ok(cache)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(fs::File::open(path)?)
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn load_or_new(path: &Path) -> Result<Self> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        self.write_to(fs::File::create(&tmp)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn parse_header(line: &str) -> Result<bool> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("muposet") {
        return Err(Error::CacheFormat(format!("bad header {line:?}")));
    }
    match parts.next() {
        Some(v) if v == format!("v{FORMAT_VERSION}") => {}
        Some(v) => return Err(Error::CacheFormat(format!("unsupported version {v}"))),
        None => return Err(Error::CacheFormat(format!("bad header {line:?}"))),
    }
    let canonical = match parts.next() {
        Some("canonical=1") => true,
        Some("canonical=0") => false,
        _ => return Err(Error::CacheFormat(format!("bad header {line:?}"))),
    };
    if parts.next().is_some() {
        return Err(Error::CacheFormat(format!("bad header {line:?}")));
    }
    Ok(canonical)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lookup_canonicalizes() {
        let mut c = MuCache::new();
        assert_eq!(c.get(&p("1")), None);
        c.put(&p("2413"), -3).unwrap();
        assert_eq!(c.get(&p("3142")), Some(-3));
        c.put(&p("3142"), -3).unwrap();
        assert_eq!(c.len(), 1);
        assert!(matches!(c.put(&p("3142"), 3), Err(Error::CacheConflict { .. })));
    }

    #[test]
    fn non_canonical_keys_are_literal() {
        let mut c = MuCache::non_canonical();
        c.put(&p("2413"), -3).unwrap();
        assert_eq!(c.get(&p("3142")), None);
    }

    #[test]
    fn text_format_is_exact() {
        let mut c = MuCache::new();
        c.put(&p("2413"), -3).unwrap();
        c.put(&p("12"), -1).unwrap();
        c.put(&p("1"), 1).unwrap();
        c.put(&Permutation::identity(10), 0).unwrap();
        let mut buf = Vec::new();
        c.write_to(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "muposet v1 canonical=1\n1\t1\n12\t-1\n2413\t-3\n1,2,3,4,5,6,7,8,9,10\t0\n"
        );
        assert_eq!(MuCache::read_from(&buf[..]).unwrap(), c);
    }

    #[test]
    fn rejects_bad_files() {
        let read = |s: &str| MuCache::read_from(s.as_bytes());
        assert!(matches!(read(""), Err(Error::CacheFormat(_))));
        assert!(matches!(read("muposet v2 canonical=1\n"), Err(Error::CacheFormat(_))));
        assert!(matches!(read("muposet v1 canonical=1\n12 -1\n"), Err(Error::CacheFormat(_))));
        assert!(matches!(read("muposet v1 canonical=1\n3142\t-3\n"), Err(Error::CacheFormat(_))));
        assert!(matches!(
            read("muposet v1 canonical=1\n12\t-1\n12\t1\n"),
            Err(Error::CacheConflict { .. })
        ));
        assert!(read("muposet v1 canonical=0\n3142\t-3\n").is_ok());
    }

    #[test]
    fn merge_rejects_conflicts() {
        let mut a = MuCache::new();
        a.put(&p("12"), -1).unwrap();
        let mut b = MuCache::new();
        b.put(&p("21"), -1).unwrap();
        b.put(&p("132"), 1).unwrap();
        a.merge(b).unwrap();
        assert_eq!(a.len(), 2);
        let mut bad = MuCache::new();
        bad.put(&p("12"), 1).unwrap();
        assert!(a.merge(bad).is_err());
        assert!(a.merge(MuCache::non_canonical()).is_err());
    }
}

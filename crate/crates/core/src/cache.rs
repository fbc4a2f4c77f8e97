//! On-disk cache for [`DivisorTable`].
//!
//! Layout (all integers little-endian):
//!
//! | offset | size | field                                  |
//! |--------|------|----------------------------------------|
//! | 0      | 4    | magic `DZDT`                           |
//! | 4      | 4    | format version (`u32`, currently 1)    |
//! | 8      | 8    | limit (`u64`)                          |
//! | 16     | 32   | SHA-256 of the payload                 |
//! | 48     | 4·L  | payload: `d(1) ..= d(L)` as `u32`      |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::divisor::{sieve_divisors_capped, DivisorTable, DEFAULT_MAX_TABLE_LIMIT};
use crate::error::{invalid, Error, Result};

pub const MAGIC: &[u8; 4] = b"DZDT";
pub const FORMAT_VERSION: u32 = 1;
pub const HEADER_LEN: usize = 48;
/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "DIVZETA_CACHE_DIR";

/// How [`load_or_build`] obtained its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Loaded,
    /// No cache file existed.
    Built,
    /// A cache existed but was unusable; the reason is kept for the warning.
    Rebuilt(String),
}

/// `$DIVZETA_CACHE_DIR`, else `$XDG_CACHE_HOME/divzeta`, else `~/.cache/divzeta`, else a temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("divzeta");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("divzeta");
    }
    std::env::temp_dir().join("divzeta")
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join("divisors.dzdt")
}

fn payload_bytes(values: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * 4);
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Writes the table atomically (temp file + rename).
pub fn write_table(path: &Path, table: &DivisorTable) -> Result<()> {
    let payload = payload_bytes(table.values());
    let digest = Sha256::digest(&payload);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        f.write_all(MAGIC)?;
        f.write_all(&FORMAT_VERSION.to_le_bytes())?;
        f.write_all(&table.limit().to_le_bytes())?;
        f.write_all(&digest)?;
        f.write_all(&payload)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads and verifies a cache file.
pub fn read_table(path: &Path) -> Result<DivisorTable> {
    let bytes = fs::read(path)?;
    if bytes.len() < HEADER_LEN {
        return Err(Error::CorruptCache("file shorter than header".into()));
    }
    if &bytes[0..4] != MAGIC {
        return Err(Error::CorruptCache("bad magic".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(Error::CorruptCache(format!("unsupported version {version}")));
    }
    let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let payload = &bytes[HEADER_LEN..];
    if payload.len() as u64 != limit.saturating_mul(4) {
        return Err(Error::CorruptCache(format!(
            "payload holds {} bytes, limit {limit} needs {}",
            payload.len(),
            limit.saturating_mul(4)
        )));
    }
    if Sha256::digest(payload).as_slice() != &bytes[16..48] {
        return Err(Error::CorruptCache("checksum mismatch".into()));
    }
    let mut values = Vec::with_capacity(limit as usize + 1);
    values.push(0);
    values.extend(payload.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())));
    Ok(DivisorTable::from_values(values))
}

/// Loads a table covering at least `limit` from `dir`, sieving and rewriting the cache when
/// it is missing, corrupt or too small. A larger cached table is returned as is.
pub fn load_or_build(dir: &Path, limit: u64) -> Result<(DivisorTable, CacheOutcome)> {
    load_or_build_capped(dir, limit, DEFAULT_MAX_TABLE_LIMIT)
}

pub fn load_or_build_capped(dir: &Path, limit: u64, max_limit: u64) -> Result<(DivisorTable, CacheOutcome)> {
    if limit == 0 {
        return Err(invalid!("cache limit must be at least 1"));
    }
    let path = cache_path(dir);
    let outcome = if path.exists() {
        match read_table(&path) {
            Ok(t) if t.limit() >= limit => return Ok((t, CacheOutcome::Loaded)),
            Ok(t) => CacheOutcome::Rebuilt(format!("cached limit {} is below {limit}", t.limit())),
            Err(Error::CorruptCache(why)) => CacheOutcome::Rebuilt(why),
            Err(e) => return Err(e),
        }
    } else {
        CacheOutcome::Built
    };
    let table = sieve_divisors_capped(limit, max_limit)?;
    write_table(&path, &table)?;
    Ok((table, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::sieve_divisors;

    #[test]
    fn header_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path());
        write_table(&path, &sieve_divisors(10).unwrap()).unwrap();
        let bytes = fs::read(&path).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN + 40);
        assert_eq!(&bytes[..4], b"DZDT");
        assert_eq!(u64::from_le_bytes(bytes[8..16].try_into().unwrap()), 10);
        // d(6) = 4
        assert_eq!(u32::from_le_bytes(bytes[HEADER_LEN + 20..HEADER_LEN + 24].try_into().unwrap()), 4);
    }

    #[test]
    fn truncated_file_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path());
        write_table(&path, &sieve_divisors(100).unwrap()).unwrap();
        let bytes = fs::read(&path).unwrap();
        fs::write(&path, &bytes[..bytes.len() - 4]).unwrap();
        assert!(matches!(read_table(&path), Err(Error::CorruptCache(_))));
    }

    #[test]
    fn larger_cache_is_reused() {
        let dir = tempfile::tempdir().unwrap();
        load_or_build(dir.path(), 1000).unwrap();
        let (t, outcome) = load_or_build(dir.path(), 500).unwrap();
        assert_eq!(outcome, CacheOutcome::Loaded);
        assert_eq!(t.limit(), 1000);
        assert!(load_or_build(dir.path(), 0).is_err());
    }
}

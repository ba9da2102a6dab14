//! Append-only point-count cache: one record per line,
//! `hash_hex p k N` in ASCII, keyed by the canonical surface hash.
//!
//! Counts are expensive and immutable, so the file only ever grows. Reads
//! take a shared advisory lock, appends an exclusive one (whole file, Unix
//! flock; other platforms run unlocked). A corrupt trailing record — e.g.
//! from a killed writer — is tolerated: the file is truncated back to the
//! last good record with a warning. Corruption earlier in the file is a
//! hard error.

use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
}

/// Environment variable consulted for the cache directory when no explicit
/// flag is given; an explicit flag always wins.
pub const CACHE_DIR_ENV: &str = "K3JUMP_CACHE_DIR";

const CACHE_FILE: &str = "counts.txt";

impl CountCache {
    /// Opens (creating if needed) the cache in `dir`.
    pub fn in_dir(dir: &Path) -> std::io::Result<CountCache> {
        std::fs::create_dir_all(dir)?;
        Ok(CountCache {
            path: dir.join(CACHE_FILE),
        })
    }

    /// Resolves the cache directory: explicit flag, then `K3JUMP_CACHE_DIR`,
    /// then the platform data dir (`$XDG_DATA_HOME` or `~/.local/share`),
    /// then `./.k3jump` as a last resort.
    pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
        if let Some(p) = flag {
            return p.to_path_buf();
        }
        if let Ok(p) = std::env::var(CACHE_DIR_ENV) {
            if !p.is_empty() {
                return PathBuf::from(p);
            }
        }
        if let Ok(xdg) = std::env::var("XDG_DATA_HOME") {
            if !xdg.is_empty() {
                return PathBuf::from(xdg).join("k3jump");
            }
        }
        if let Ok(home) = std::env::var("HOME") {
            if !home.is_empty() {
                return PathBuf::from(home).join(".local/share/k3jump");
            }
        }
        PathBuf::from(".k3jump")
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Looks up a count. I/O problems degrade to a miss; a corrupt interior
    /// record panics rather than returning wrong data.
    pub fn lookup(&self, hash: u64, p: u64, k: u32) -> Option<u64> {
        let records = self.read_all().ok()?;
        records
            .iter()
            .find(|r| r.hash == hash && r.p == p && r.k == k)
            .map(|r| r.n)
    }

    /// Appends one record under an exclusive lock.
    pub fn append(&self, hash: u64, p: u64, k: u32, n: u64) -> std::io::Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        lock(&f, true)?;
        let line = format!("{hash:016x} {p} {k} {n}\n");
        f.write_all(line.as_bytes())?;
        f.flush()?;
        unlock(&f);
        Ok(())
    }

    /// All records, healing a corrupt trailing line by truncation.
    pub fn read_all(&self) -> std::io::Result<Vec<Record>> {
        let mut f = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        lock(&f, false)?;
        let mut text = String::new();
        f.read_to_string(&mut text)?;
        unlock(&f);

        let mut records = Vec::new();
        let mut good_bytes = 0usize;
        let mut bad: Option<String> = None;
        for chunk in text.split_inclusive('\n') {
            let line = chunk.trim_end_matches('\n');
            if line.is_empty() {
                good_bytes += chunk.len();
                continue;
            }
            // A record without its trailing newline is a torn write even if
            // the text happens to parse.
            match Record::parse(line) {
                Some(r) if chunk.ends_with('\n') => {
                    if bad.is_some() {
                        // A valid record after a bad one: interior corruption.
                        return Err(std::io::Error::new(
                            std::io::ErrorKind::InvalidData,
                            format!(
                                "corrupt cache record mid-file in {}: {:?}",
                                self.path.display(),
                                bad.unwrap()
                            ),
                        ));
                    }
                    records.push(r);
                    good_bytes += chunk.len();
                }
                _ if bad.is_none() => bad = Some(line.to_string()),
                _ => {}
            }
        }
        if let Some(bad) = bad {
            eprintln!(
                "warning: truncating corrupt trailing cache record {:?} in {}",
                bad,
                self.path.display()
            );
            let f = OpenOptions::new().write(true).open(&self.path)?;
            lock(&f, true)?;
            f.set_len(good_bytes as u64)?;
            unlock(&f);
        }
        Ok(records)
    }

    pub fn stats(&self) -> std::io::Result<CacheStats> {
        let records = self.read_all()?;
        let mut surfaces: Vec<u64> = records.iter().map(|r| r.hash).collect();
        surfaces.sort_unstable();
        surfaces.dedup();
        Ok(CacheStats {
            records: records.len(),
            surfaces: surfaces.len(),
        })
    }

    pub fn clear(&self) -> std::io::Result<()> {
        match std::fs::remove_file(&self.path) {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(()),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub hash: u64,
    pub p: u64,
    pub k: u32,
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub records: usize,
    pub surfaces: usize,
}

impl Record {
    fn parse(line: &str) -> Option<Record> {
        let mut it = line.split_ascii_whitespace();
        let hash = u64::from_str_radix(it.next()?, 16).ok()?;
        let p = it.next()?.parse().ok()?;
        let k = it.next()?.parse().ok()?;
        let n = it.next()?.parse().ok()?;
        if it.next().is_some() {
            return None;
        }
        Some(Record { hash, p, k, n })
    }
}

#[cfg(unix)]
fn lock(f: &File, exclusive: bool) -> std::io::Result<()> {
    use std::os::unix::io::AsRawFd;
    let op = if exclusive { libc::LOCK_EX } else { libc::LOCK_SH };
    let rc = unsafe { libc::flock(f.as_raw_fd(), op) };
    if rc != 0 {
        return Err(std::io::Error::last_os_error());
    }
    Ok(())
}

#[cfg(unix)]
fn unlock(f: &File) {
    use std::os::unix::io::AsRawFd;
    unsafe { libc::flock(f.as_raw_fd(), libc::LOCK_UN) };
}

#[cfg(not(unix))]
fn lock(_f: &File, _exclusive: bool) -> std::io::Result<()> {
    Ok(())
}

#[cfg(not(unix))]
fn unlock(_f: &File) {}

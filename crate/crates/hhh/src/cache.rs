//! On-disk cache of computed tables, one JSON file per configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hhh_core::braid::BraidWord;
use hhh_core::homology::TrigradedDims;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::{dims_from_entries, entries, Entry};
use crate::CliError;

/// Bumped whenever the computed tables could change.
pub const VERSION: &str = "hhh-cache-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Key {
    version: String,
    strands: usize,
    word: Vec<i32>,
    qmax: i32,
    reduce: bool,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    key: Key,
    entries: Vec<Entry>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn key(word: &BraidWord, qmax: i32, reduce: bool) -> Key {
        Key { version: VERSION.into(), strands: word.strands(), word: word.letters().to_vec(), qmax, reduce }
    }

    fn path(&self, key: &Key) -> PathBuf {
        let bytes = serde_json::to_vec(key).expect("plain data serializes");
        let digest = Sha256::digest(&bytes);
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// A stored table for exactly this configuration; unreadable, foreign
    /// or stale-version files are treated as misses.
    pub fn load(&self, word: &BraidWord, qmax: i32, reduce: bool) -> Option<TrigradedDims> {
        let key = Self::key(word, qmax, reduce);
        let text = fs::read(self.path(&key)).ok()?;
        let stored: Stored = serde_json::from_slice(&text).ok()?;
        (stored.key == key).then(|| dims_from_entries(qmax, &stored.entries))
    }

    /// Writes through a temporary file in the cache directory and renames
    /// it into place.
    pub fn store(&self, word: &BraidWord, qmax: i32, reduce: bool, dims: &TrigradedDims) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir)?;
        let key = Self::key(word, qmax, reduce);
        let path = self.path(&key);
        let stored = Stored { key, entries: entries(dims) };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec(&stored)?)?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        Ok(())
    }
}

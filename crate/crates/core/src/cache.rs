//! On-disk cache of subspace lattices, one JSON file per `(field, n)`.
//!
//! Files are written to a temporary name and renamed into place. A missing,
//! unreadable, corrupt or outdated entry is recomputed (with a warning for
//! the latter cases) and rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::gfq::FqField;
use crate::lattice::{subspace_count, LatticeFile, LatticeIndex, LATTICE_SCHEMA_VERSION};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "QINTERP_CACHE_DIR";

/// How a lattice was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheOutcome {
    Loaded,
    Computed,
    /// An entry existed but could not be used.
    Recomputed,
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// The directory from `QINTERP_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(LatticeCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, field: &FqField, n: usize) -> PathBuf {
        let modulus: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
        self.dir.join(format!(
            "lattice-p{}-e{}-m{}-n{}.json",
            field.p(),
            field.e(),
            modulus.join("_"),
            n
        ))
    }

    pub fn lattice(&self, field: &FqField, n: usize, max_subspaces: u128) -> Result<(LatticeIndex, CacheOutcome)> {
        let path = self.path_for(field, n);
        let mut outcome = CacheOutcome::Computed;
        if path.exists() {
            match self.load(&path, field, n) {
                Ok(lattice) => return Ok((lattice, CacheOutcome::Loaded)),
                Err(reason) => {
                    log::warn!("ignoring cache entry {}: {reason}", path.display());
                    outcome = CacheOutcome::Recomputed;
                }
            }
        }
        let lattice = LatticeIndex::enumerate(field, n, max_subspaces)?;
        self.store(&path, &lattice)?;
        Ok((lattice, outcome))
    }

    fn load(&self, path: &Path, field: &FqField, n: usize) -> std::result::Result<LatticeIndex, String> {
        let bytes = fs::read(path).map_err(|e| e.to_string())?;
        let file: LatticeFile = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
        if file.schema_version != LATTICE_SCHEMA_VERSION {
            return Err(format!(
                "schema version {} (expected {LATTICE_SCHEMA_VERSION})",
                file.schema_version
            ));
        }
        if file.field != field.spec() || file.n != n {
            return Err("entry is for a different field or dimension".into());
        }
        let expected = subspace_count(n, field.q()).map_err(|e| e.to_string())?;
        if file.subspaces.len() as u128 != expected {
            return Err(format!("{} subspaces, expected {expected}", file.subspaces.len()));
        }
        LatticeIndex::from_file(file).map_err(|e| e.to_string())
    }

    fn store(&self, path: &Path, lattice: &LatticeIndex) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let bytes = serde_json::to_vec(&lattice.to_file())?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&bytes)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::cmat;
use crate::error::{Error, Result};
use crate::weightcalc::{DominantWeight, HalfInt};

use super::validate::casimir_check;
use super::{pairs, Generators, Representation};

pub const CACHE_ENV: &str = "GRADKIT_CACHE_DIR";

const MANIFEST: &str = "manifest.json";
const REVALIDATION_TOLERANCE: f64 = 1e-9;

/// `$GRADKIT_CACHE_DIR`, or `./.gradkit-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".gradkit-cache"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub k: usize,
    pub l: usize,
    pub file: String,
}

/// `manifest.json` of a representation bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub n: usize,
    pub weight: Vec<HalfInt>,
    pub dim: usize,
    pub generators: Vec<GeneratorFile>,
}

/// Writes `rep` as a bundle into `dir`, which must exist.
pub fn write_bundle(dir: &Path, rep: &Representation) -> Result<Manifest> {
    let mut generators = Vec::new();
    for (k, l) in pairs(rep.n()) {
        let file = format!("g_{k}_{l}.cmat");
        cmat::write(&dir.join(&file), rep.generator(k, l))?;
        generators.push(GeneratorFile { k, l, file });
    }
    let manifest = Manifest { n: rep.n(), weight: rep.weight().coords().to_vec(), dim: rep.dim(), generators };
    fs::write(dir.join(MANIFEST), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(manifest)
}

/// Reads a bundle written by [`write_bundle`].
pub fn read_bundle(dir: &Path) -> Result<Representation> {
    let manifest: Manifest = serde_json::from_slice(&fs::read(dir.join(MANIFEST))?)?;
    let weight = DominantWeight::new(manifest.n, manifest.weight.clone())?;
    let mut mats = Vec::new();
    for ((k, l), entry) in pairs(manifest.n).into_iter().zip(&manifest.generators) {
        if (entry.k, entry.l) != (k, l) {
            return Err(Error::Format(format!("manifest lists generator ({}, {}) out of order", entry.k, entry.l)));
        }
        let g = cmat::read(&dir.join(&entry.file))?;
        if g.rows() != manifest.dim || g.cols() != manifest.dim {
            return Err(Error::Format(format!("{} is {}x{}, expected {}", entry.file, g.rows(), g.cols(), manifest.dim)));
        }
        mats.push(g);
    }
    if mats.len() != manifest.n * (manifest.n - 1) / 2 {
        return Err(Error::Format("manifest lists too few generators".into()));
    }
    Ok(Representation::new(weight, Generators::new(manifest.n, manifest.dim, mats)))
}

/// On-disk store of built representations, one bundle directory per weight.
#[derive(Clone, Debug)]
pub struct DiskCache {
    root: PathBuf,
}

impl DiskCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DiskCache { root: root.into() }
    }

    pub fn from_env() -> Self {
        Self::new(default_cache_dir())
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn bundle_dir(&self, weight: &DominantWeight) -> PathBuf {
        self.root.join(weight.cache_key())
    }

    /// Stores `rep`; concurrent writers race on an atomic rename and the
    /// loser discards its copy.
    pub fn store(&self, rep: &Representation) -> Result<PathBuf> {
        let target = self.bundle_dir(rep.weight());
        if target.join(MANIFEST).exists() {
            return Ok(target);
        }
        fs::create_dir_all(&self.root)?;
        let nonce = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
        let tmp = self.root.join(format!(".{}.tmp-{}-{nonce}", rep.weight().cache_key(), std::process::id()));
        fs::create_dir_all(&tmp)?;
        write_bundle(&tmp, rep)?;
        match fs::rename(&tmp, &target) {
            Ok(()) => Ok(target),
            Err(_) if target.join(MANIFEST).exists() => {
                fs::remove_dir_all(&tmp)?;
                Ok(target)
            }
            Err(e) => {
                let _ = fs::remove_dir_all(&tmp);
                Err(e.into())
            }
        }
    }

    /// Loads a cached bundle and rechecks its Casimir scalar.
    pub fn load(&self, weight: &DominantWeight) -> Result<Option<Representation>> {
        let dir = self.bundle_dir(weight);
        if !dir.join(MANIFEST).exists() {
            return Ok(None);
        }
        let rep = read_bundle(&dir)?;
        if rep.weight() != weight {
            return Err(Error::Integrity(format!("bundle {} holds weight {}", dir.display(), rep.weight())));
        }
        let check = casimir_check(&rep, REVALIDATION_TOLERANCE);
        if !check.pass {
            return Err(Error::Integrity(format!(
                "cached {} fails its Casimir check (residual {:.3e})",
                weight, check.max_residual
            )));
        }
        Ok(Some(rep))
    }

    /// Keys of the stored bundles, sorted.
    pub fn list(&self) -> Result<Vec<String>> {
        if !self.root.exists() {
            return Ok(Vec::new());
        }
        let mut keys = Vec::new();
        for entry in fs::read_dir(&self.root)? {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if !name.starts_with('.') && entry.path().join(MANIFEST).exists() {
                keys.push(name);
            }
        }
        keys.sort();
        Ok(keys)
    }

    /// Removes every bundle; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        if !self.root.exists() {
            return Ok(0);
        }
        let mut removed = 0;
        for entry in fs::read_dir(&self.root)? {
            let path = entry?.path();
            if path.is_dir() {
                fs::remove_dir_all(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

//! The shipped mosaic corpus and its checksum manifest.
//!
//! `MANIFEST` has one line per file: `sha256<TAB>genus<TAB>relative path`,
//! sorted by path. A file whose bytes or genus drift from the manifest is
//! reported.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;
use vmosaic_core::VirtualMosaic;

use crate::text::{parse_mosaic, TextError};

pub const MANIFEST: &str = "MANIFEST";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Text { path: String, source: TextError },
    #[error("manifest line {0}: malformed")]
    Manifest(usize),
    #[error("{path}: checksum differs from the manifest")]
    Checksum { path: String },
    #[error("{path}: genus {found}, manifest says {expected}")]
    Genus { path: String, expected: usize, found: usize },
    #[error("{0}: not listed in the manifest")]
    Unlisted(String),
    #[error("{0}: listed in the manifest but missing")]
    Missing(String),
}

/// Directory of the corpus shipped with this crate.
pub fn default_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusFile {
    pub path: String,
    pub sha256: String,
    pub genus: usize,
    pub mosaic: VirtualMosaic,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.display().to_string(), source }
}

pub fn read_mosaic(path: &Path) -> Result<VirtualMosaic, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(io(path))?;
    parse_mosaic(&text).map_err(|source| CorpusError::Text { path: path.display().to_string(), source })
}

/// Every `.vm` file below `root`, as paths relative to it with `/`
/// separators, sorted.
pub fn list(root: &Path) -> Result<Vec<String>, CorpusError> {
    fn walk(root: &Path, dir: &Path, out: &mut Vec<String>) -> Result<(), CorpusError> {
        for entry in std::fs::read_dir(dir).map_err(io(dir))? {
            let path = entry.map_err(io(dir))?.path();
            if path.is_dir() {
                walk(root, &path, out)?;
            } else if path.extension().is_some_and(|e| e == "vm") {
                let rel = path.strip_prefix(root).expect("below root");
                out.push(rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/"));
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(root, root, &mut out)?;
    out.sort();
    Ok(out)
}

/// Parse every corpus file and compute its checksum and genus.
pub fn scan(root: &Path) -> Result<Vec<CorpusFile>, CorpusError> {
    list(root)?
        .into_iter()
        .map(|rel| {
            let full = root.join(&rel);
            let bytes = std::fs::read(&full).map_err(io(&full))?;
            let mosaic = read_mosaic(&full)?;
            Ok(CorpusFile { sha256: format!("{:x}", Sha256::digest(&bytes)), genus: mosaic.genus(), path: rel, mosaic })
        })
        .collect()
}

pub fn manifest_text(files: &[CorpusFile]) -> String {
    files.iter().map(|f| format!("{}\t{}\t{}\n", f.sha256, f.genus, f.path)).collect()
}

/// Check the corpus under `root` against its manifest.
pub fn verify(root: &Path) -> Result<Vec<CorpusFile>, CorpusError> {
    let manifest_path = root.join(MANIFEST);
    let text = std::fs::read_to_string(&manifest_path).map_err(io(&manifest_path))?;
    let mut listed = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        let [sha, genus, path] = fields[..] else { return Err(CorpusError::Manifest(k + 1)) };
        let genus: usize = genus.parse().map_err(|_| CorpusError::Manifest(k + 1))?;
        listed.push((sha.to_string(), genus, path.to_string()));
    }
    let files = scan(root)?;
    for f in &files {
        let Some((sha, genus, _)) = listed.iter().find(|(_, _, p)| *p == f.path) else {
            return Err(CorpusError::Unlisted(f.path.clone()));
        };
        if *sha != f.sha256 {
            return Err(CorpusError::Checksum { path: f.path.clone() });
        }
        if *genus != f.genus {
            return Err(CorpusError::Genus { path: f.path.clone(), expected: *genus, found: f.genus });
        }
    }
    if let Some((_, _, p)) = listed.iter().find(|(_, _, p)| !files.iter().any(|f| f.path == *p)) {
        return Err(CorpusError::Missing(p.clone()));
    }
    Ok(files)
}

//! Catalog files: the shipped reference tables and user-supplied files.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use vmosaic_core::catalog::{Catalog, ParseError};

/// Classical knots through nine crossings.
pub const CLASSICAL: &str = include_str!("../data/classical.tsv");
/// Virtual knots with up to four classical crossings, traced from the corpus.
pub const VIRTUAL: &str = include_str!("../data/virtual.tsv");

#[derive(Debug, Error)]
pub enum CatalogFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// The classical and virtual reference tables in one catalog.
pub fn builtin() -> Catalog {
    let mut cat = Catalog::ingest(CLASSICAL).expect("shipped classical table parses");
    cat.extend_from_text(VIRTUAL).expect("shipped virtual table parses");
    cat
}

pub fn load(path: &Path) -> Result<Catalog, CatalogFileError> {
    let mut cat = Catalog::new();
    extend_from_file(&mut cat, path)?;
    Ok(cat)
}

pub fn extend_from_file(cat: &mut Catalog, path: &Path) -> Result<(), CatalogFileError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogFileError::Io { path: shown.clone(), source })?;
    cat.extend_from_text(&text).map_err(|source| CatalogFileError::Parse { path: shown, source })
}

pub fn save(cat: &Catalog, path: &Path) -> Result<(), CatalogFileError> {
    std::fs::write(path, cat.to_text())
        .map_err(|source| CatalogFileError::Io { path: path.display().to_string(), source })
}

/// Groups of names sharing one fingerprint, one group per line, in catalog
/// order. Empty when every fingerprint is unique.
pub fn ambiguity_report(cat: &Catalog) -> String {
    let mut seen = vec![false; cat.len()];
    let mut out = String::new();
    for (i, a) in cat.entries().iter().enumerate() {
        if seen[i] {
            continue;
        }
        let group: Vec<usize> = (i..cat.len())
            .filter(|&j| !seen[j] && cat.entries()[j].fingerprint.matches(&a.fingerprint))
            .collect();
        if group.len() > 1 {
            let names: Vec<&str> = group.iter().map(|&j| cat.entries()[j].name.as_str()).collect();
            let _ = writeln!(out, "ambiguous\t{}\t{}", names.join(" "), a.fingerprint);
        }
        for j in group {
            seen[j] = true;
        }
    }
    out
}

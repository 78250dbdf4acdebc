//! Named knot catalog keyed by fingerprint.
//!
//! The text form has one entry per line: `name<TAB>gauss_code<TAB>source`,
//! optionally followed by `<TAB>fingerprint`. Blank lines and lines starting
//! with `#` are ignored. An empty code field or `0` is the unknot. When the
//! fingerprint column is present it must agree with the fingerprint
//! recomputed from the code.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::invariants::{cable_applies, fingerprint, Fingerprint, InvariantError};
use crate::trace::{CodeError, GaussCode};

/// Where a reference code comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    ClassicalTable,
    GreenTable,
    /// Traced from a shipped mosaic whose caption names the knot.
    MosaicCorpus,
    User,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::ClassicalTable => "classical-table",
            Source::GreenTable => "green-table",
            Source::MosaicCorpus => "corpus-trace",
            Source::User => "user",
        }
    }

    pub fn parse(s: &str) -> Option<Source> {
        [Source::ClassicalTable, Source::GreenTable, Source::MosaicCorpus, Source::User]
            .into_iter()
            .find(|src| src.tag() == s)
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub code: GaussCode,
    pub fingerprint: Fingerprint,
    /// The knot has too many crossings for the cable polynomial, so only the
    /// plain fingerprint is stored.
    pub cable_capped: bool,
}

impl CatalogEntry {
    pub fn new(name: &str, source: Source, code: GaussCode) -> Result<Self, InvariantError> {
        let fp = fingerprint(&code, true)?;
        let cable_capped = code.component_count() == 1 && !cable_applies(&code);
        Ok(CatalogEntry { name: String::from(name), source, code, fingerprint: fp, cable_capped })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseProblem {
    FieldCount(usize),
    EmptyName,
    Code(CodeError),
    UnknownSource(String),
    DuplicateName(String),
    Invariant(InvariantError),
    BadFingerprint,
    StaleFingerprint,
}

/// A catalog line that cannot be ingested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub problem: ParseProblem,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "catalog line {}: ", self.line)?;
        match &self.problem {
            ParseProblem::FieldCount(k) => write!(f, "expected 3 or 4 tab-separated fields, found {k}"),
            ParseProblem::EmptyName => write!(f, "empty name"),
            ParseProblem::Code(e) => write!(f, "{e}"),
            ParseProblem::UnknownSource(s) => write!(f, "unknown source tag {s:?}"),
            ParseProblem::DuplicateName(s) => write!(f, "duplicate name {s:?}"),
            ParseProblem::Invariant(e) => write!(f, "{e}"),
            ParseProblem::BadFingerprint => write!(f, "malformed fingerprint"),
            ParseProblem::StaleFingerprint => write!(f, "stored fingerprint differs from the code's"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: BTreeMap<String, usize>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    /// Parse catalog text, computing every fingerprint.
    pub fn ingest(text: &str) -> Result<Catalog, ParseError> {
        let mut cat = Catalog::new();
        cat.extend_from_text(text)?;
        Ok(cat)
    }

    /// Add the entries of another catalog text. Names must stay unique.
    pub fn extend_from_text(&mut self, text: &str) -> Result<(), ParseError> {
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let err = |problem| ParseError { line, problem };
            let trimmed = raw.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 3 && fields.len() != 4 {
                return Err(err(ParseProblem::FieldCount(fields.len())));
            }
            let name = fields[0].trim();
            if name.is_empty() {
                return Err(err(ParseProblem::EmptyName));
            }
            let code_text = fields[1].trim();
            let code = if code_text.is_empty() {
                GaussCode::unknot()
            } else {
                GaussCode::parse(code_text).map_err(|e| err(ParseProblem::Code(e)))?
            };
            let source = Source::parse(fields[2].trim())
                .ok_or_else(|| err(ParseProblem::UnknownSource(fields[2].trim().to_string())))?;
            let entry = CatalogEntry::new(name, source, code).map_err(|e| err(ParseProblem::Invariant(e)))?;
            if let Some(stored) = fields.get(3) {
                let fp = Fingerprint::parse(stored).ok_or_else(|| err(ParseProblem::BadFingerprint))?;
                if fp != entry.fingerprint {
                    return Err(err(ParseProblem::StaleFingerprint));
                }
            }
            self.insert(entry).map_err(|e| err(ParseProblem::DuplicateName(e)))?;
        }
        Ok(())
    }

    /// Add an entry. Returns the name back if it is already taken.
    pub fn insert(&mut self, entry: CatalogEntry) -> Result<(), String> {
        if self.index.contains_key(&entry.name) {
            return Err(entry.name);
        }
        self.index.insert(entry.name.clone(), self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.index.get(name).map(|&k| &self.entries[k])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Names whose fingerprint matches `fp`, in catalog order. More than one
    /// name means the fingerprint does not separate them.
    pub fn identify(&self, fp: &Fingerprint) -> Vec<&str> {
        self.entries.iter().filter(|e| e.fingerprint.matches(fp)).map(|e| e.name.as_str()).collect()
    }

    /// Pairs of distinct names whose fingerprints match.
    pub fn collisions(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if a.fingerprint.matches(&b.fingerprint) {
                    out.push((a.name.as_str(), b.name.as_str()));
                }
            }
        }
        out
    }

    /// Entries flagged as lacking a cable polynomial.
    pub fn capped(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| e.cable_capped).map(|e| e.name.as_str()).collect()
    }

    /// Text form with the fingerprint column filled in.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&e.name);
            s.push('\t');
            s.push_str(&e.code.to_string());
            s.push('\t');
            s.push_str(e.source.tag());
            s.push('\t');
            s.push_str(&e.fingerprint.to_text());
            s.push('\n');
        }
        s
    }
}

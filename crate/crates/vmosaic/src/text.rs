//! Plain text form of a virtual mosaic.
//!
//! ```text
//! n=2
//! T10 T1
//! T9 T8
//! labels: a:0,3 b:1,2 c:4,6 d:5,7
//! ```
//!
//! Labels may also be written as bare pairs `0-3`. Slots left unlabeled are
//! paired by `complete_pairing`. The printer names labels in order of their
//! lowest slot as `a`, `b`, ..., `z`, `aa`, `ab`, ...

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;
use vmosaic_core::surface::{complete_pairing, SurfaceError};
use vmosaic_core::{MosaicGrid, Tile, VirtualMosaic};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid mosaic: {0}")]
    Invalid(#[from] SurfaceError),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> TextError {
    TextError::Syntax { line, col, msg: msg.into() }
}

pub fn parse_tile(tok: &str) -> Option<Tile> {
    let k: usize = tok.strip_prefix('T')?.parse().ok()?;
    if tok.len() > 2 && tok.as_bytes()[1] == b'0' {
        return None;
    }
    Tile::from_index(k)
}

/// Bijective base-26 label name of the k-th label.
pub fn label_name(mut k: usize) -> String {
    let mut s = Vec::new();
    k += 1;
    while k > 0 {
        k -= 1;
        s.push(b'a' + (k % 26) as u8);
        k /= 26;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

fn column(raw: &str, part: &str) -> usize {
    part.as_ptr() as usize - raw.as_ptr() as usize + 1
}

/// Parse and validate a mosaic.
pub fn parse_mosaic(text: &str) -> Result<VirtualMosaic, TextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| syntax(hl, 1, "expected header n=<positive integer>"))?;
    let mut cells = Vec::with_capacity(n * n);
    for r in 0..n {
        let (ln, raw) = lines.next().ok_or_else(|| syntax(hl + r + 1, 1, format!("expected {n} tile rows")))?;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.len() != n {
            return Err(syntax(ln, 1, format!("expected {n} tiles, found {}", toks.len())));
        }
        for tok in toks {
            let t = parse_tile(tok).ok_or_else(|| syntax(ln, column(raw, tok), format!("unknown tile {tok:?}")))?;
            cells.push(t);
        }
    }
    let grid = MosaicGrid::new(n, cells).expect("n rows of n tiles");
    let (ll, raw) = lines.next().ok_or_else(|| syntax(hl + n + 1, 1, "expected a labels: line"))?;
    let body = raw
        .trim_start()
        .strip_prefix("labels:")
        .ok_or_else(|| syntax(ll, 1, "expected a labels: line"))?;
    let mut pairs = Vec::new();
    let mut names = BTreeSet::new();
    for tok in body.split_whitespace() {
        let col = column(raw, tok);
        let (name, rest) = match tok.split_once(':') {
            Some((name, rest)) => (Some(name), rest),
            None => (None, tok),
        };
        let sep = if name.is_some() { ',' } else { '-' };
        let (a, b) = rest.split_once(sep).ok_or_else(|| syntax(ll, col, format!("bad label {tok:?}")))?;
        let a: usize = a.parse().map_err(|_| syntax(ll, col, format!("bad slot in {tok:?}")))?;
        let b: usize = b.parse().map_err(|_| syntax(ll, col, format!("bad slot in {tok:?}")))?;
        if let Some(name) = name {
            if name.is_empty() || !names.insert(name.to_string()) {
                return Err(syntax(ll, col, format!("duplicate or empty label name in {tok:?}")));
            }
        }
        pairs.push((a, b));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, 1, "unexpected text after the labels line"));
    }
    let pairing = complete_pairing(&grid, &pairs)?;
    Ok(VirtualMosaic::new(grid, pairing)?)
}

/// Print a mosaic in the text form accepted by `parse_mosaic`.
pub fn print_mosaic(vm: &VirtualMosaic) -> String {
    let n = vm.n();
    let mut s = String::new();
    let _ = writeln!(s, "n={n}");
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| vm.grid().get(r, c).to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let labels: Vec<String> = vm
        .pairing()
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, (a, b))| format!("{}:{a},{b}", label_name(k)))
        .collect();
    let _ = writeln!(s, "labels: {}", labels.join(" "));
    s
}

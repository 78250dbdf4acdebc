//! The move calculus on virtual mosaics.
//!
//! Schematic moves are written in a small cell language and compiled into
//! concrete rule instances. A cell is a `+`-separated list of layers. A layer
//! is a tile number, optionally prefixed by `g` (optional arcs, each arc an
//! independent choice shared by both sides of the move), `d` or `e` (an
//! alternative that replaces the black arcs it touches, one choice per cell
//! and style, shared by both sides). `0` is the blank tile. Rows are separated
//! by `/`.
//!
//! Boundary labels are written per side, for example `N:a,x,x E:b`, listing
//! the edges of that side of the fragment in slot order. A letter written
//! twice names a pair inside the fragment. A letter written once names an edge
//! whose partner lies outside the fragment; after the move that partner is
//! attached to wherever the letter now sits. Labeled edges must lie on the
//! mosaic boundary.
//!
//! Every schematic is closed under the eight symmetries of the square, the
//! exchange of T9 with T10, and reversal of the move.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::{complete_pairing, BoundaryPairing, SurfaceError, VirtualMosaic};
use crate::tiles::{boundary_endpoint_profile, cell_slot, slot_cell, Dir, MosaicGrid, Sym, Tile};

/// Move families. Names joined by `/` in `name` denote one family listed
/// under two names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    P1,
    P2,
    P4,
    P5,
    P6,
    P7,
    P8,
    P10,
    R1,
    R2,
    R2b,
    R3,
    SI1,
    SI2,
    SI3,
    SI4,
    SI5,
    SI6,
    SI7,
    SI8,
    SI9,
    Stab1,
    Stab2,
    Stab3,
    Stab4,
    LabelSwap,
    Inject,
    Eject,
    ClassicalImport,
}

/// Broad grouping of families by their effect on genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Planar,
    Reidemeister,
    SurfaceIsotopy,
    Stabilization,
    Relabel,
    Resize,
}

impl Family {
    pub const ALL: [Family; 29] = [
        Family::P1,
        Family::P2,
        Family::P4,
        Family::P5,
        Family::P6,
        Family::P7,
        Family::P8,
        Family::P10,
        Family::R1,
        Family::R2,
        Family::R2b,
        Family::R3,
        Family::SI1,
        Family::SI2,
        Family::SI3,
        Family::SI4,
        Family::SI5,
        Family::SI6,
        Family::SI7,
        Family::SI8,
        Family::SI9,
        Family::Stab1,
        Family::Stab2,
        Family::Stab3,
        Family::Stab4,
        Family::LabelSwap,
        Family::Inject,
        Family::Eject,
        Family::ClassicalImport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::P1 => "P1",
            Family::P2 => "P2/P3",
            Family::P4 => "P4",
            Family::P5 => "P5",
            Family::P6 => "P6",
            Family::P7 => "P7",
            Family::P8 => "P8/P9",
            Family::P10 => "P10/P11",
            Family::R1 => "R1/R1'",
            Family::R2 => "R2/R2'",
            Family::R2b => "R2''/R2'''",
            Family::R3 => "R3",
            Family::SI1 => "SI1",
            Family::SI2 => "SI2",
            Family::SI3 => "SI3",
            Family::SI4 => "SI4",
            Family::SI5 => "SI5",
            Family::SI6 => "SI6",
            Family::SI7 => "SI7",
            Family::SI8 => "SI8",
            Family::SI9 => "SI9",
            Family::Stab1 => "Stab1",
            Family::Stab2 => "Stab2",
            Family::Stab3 => "Stab3",
            Family::Stab4 => "Stab4",
            Family::LabelSwap => "LabelSwap",
            Family::Inject => "Inject",
            Family::Eject => "Eject",
            Family::ClassicalImport => "ClassicalImport",
        }
    }

    /// Parse a family name, accepting either name of a paired family and
    /// ignoring ASCII case.
    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        let alias = |a: &str| -> Option<Family> {
            Family::ALL.into_iter().find(|f| f.name().split('/').any(|n| n.eq_ignore_ascii_case(a)))
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .or_else(|| alias(s))
            .or_else(|| match s.to_ascii_lowercase().as_str() {
                "r2b" => Some(Family::R2b),
                _ => None,
            })
    }

    pub fn kind(self) -> FamilyKind {
        use Family::*;
        match self {
            P1 | P2 | P4 | P5 | P6 | P7 | P8 | P10 => FamilyKind::Planar,
            R1 | R2 | R2b | R3 => FamilyKind::Reidemeister,
            SI1 | SI2 | SI3 | SI4 | SI5 | SI6 | SI7 | SI8 | SI9 => FamilyKind::SurfaceIsotopy,
            Stab1 | Stab2 | Stab3 | Stab4 => FamilyKind::Stabilization,
            LabelSwap => FamilyKind::Relabel,
            Inject | Eject | ClassicalImport => FamilyKind::Resize,
        }
    }

    /// Whether the family is compiled from a schematic.
    pub fn is_schematic(self) -> bool {
        !matches!(self, Family::LabelSwap | Family::Inject | Family::Eject | Family::ClassicalImport)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveError {
    /// The site no longer matches the mosaic it is applied to.
    StaleSite,
    /// The strips to be removed are not an injection image.
    NotEjectable { row: usize, col: usize },
    /// The classical grid has a strand endpoint on its boundary.
    NotClosed { slot: usize },
    /// The classical grid is smaller than 4×4.
    TooSmall { n: usize },
    /// A closed strand lies entirely in the outer ring and would be lost.
    RingComponent { row: usize, col: usize },
    /// Injection indices outside `0..=n`.
    OutOfRange { i: usize, j: usize, n: usize },
    Invalid(SurfaceError),
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::StaleSite => write!(f, "move site does not match the mosaic"),
            MoveError::NotEjectable { row, col } => {
                write!(f, "not an injection image at row {row} col {col}")
            }
            MoveError::NotClosed { slot } => write!(f, "boundary slot {slot} carries a strand endpoint"),
            MoveError::TooSmall { n } => write!(f, "classical import needs n >= 4, got {n}"),
            MoveError::RingComponent { row, col } => {
                write!(f, "closed strand in the outer ring at row {row} col {col}")
            }
            MoveError::OutOfRange { i, j, n } => write!(f, "indices ({i}, {j}) out of range for n = {n}"),
            MoveError::Invalid(e) => write!(f, "invalid result: {e}"),
        }
    }
}

impl core::error::Error for MoveError {}

impl From<SurfaceError> for MoveError {
    fn from(e: SurfaceError) -> Self {
        MoveError::Invalid(e)
    }
}

/// One schematic: a list of pieces, each `(before cells, after cells, labels
/// before, labels after)`.
struct Schematic {
    family: Family,
    pieces: &'static [(&'static str, &'static str, &'static str, &'static str)],
}

const SCHEMATICS: &[Schematic] = &[
    Schematic { family: Family::P1, pieces: &[("g4+2 4 / 4 g2", "g4 6 / 5 g2+4", "", "")] },
    Schematic { family: Family::P2, pieces: &[("5 g3+1 / 2 g2+4", "1 g3 / 6 g2", "", "")] },
    Schematic { family: Family::P4, pieces: &[("g4 2 / 5 g2+4", "g4+2 5 / 4 g2", "", "")] },
    Schematic { family: Family::P5, pieces: &[("g4 g3 / 5 5", "g4+2 g3+1 / 4 3", "", "")] },
    Schematic { family: Family::P6, pieces: &[("1 g3 / 4 g2", "5 g3+1 / 5 g2+4", "", "")] },
    Schematic { family: Family::P7, pieces: &[("g4 g3 / 1 g2", "g4+2 g3+1 / 8 g2+4", "", "")] },
    Schematic { family: Family::P8, pieces: &[("g4+2 8 / 9 g2+4", "g4+2 9 / 8 g2+4", "", "")] },
    Schematic { family: Family::P10, pieces: &[("7 9 / g1+3 g2+4", "10 8 / g1+3 g2+4", "", "")] },
    Schematic { family: Family::R1, pieces: &[("g4+2 g3+1 / 9 g2+4", "g4+2 g3+1 / 8 g2+4", "", "")] },
    Schematic { family: Family::R2, pieces: &[("g4+2 8 / 8 g2+4", "g4+2 10 / 9 g2+4", "", "")] },
    Schematic { family: Family::R2b, pieces: &[("g4+2 g3+1 / 9 9", "g4+2 g3+1 / 8 7", "", "")] },
    Schematic {
        family: Family::R3,
        pieces: &[("d1+6 6 g3 / 9 9 5 / g1+3 10 d1+5", "d5+3 10 g3+1 / 5 9 9 / g1 6 d6+3", "", "")],
    },
    Schematic { family: Family::SI1, pieces: &[("d6+4 e6+3", "d2+5 e1+5", "N:x,x", "N:x,x")] },
    Schematic {
        family: Family::SI2,
        pieces: &[
            ("d2+5 10 e1+5", "d6+4 6 e6+3", "N:x,y,z", "N:x,y,z"),
            ("g4+0 / 5 / g1+0", "g4+2 / 9 / g1+3", "E:z,y,x", "E:z,y,x"),
        ],
    },
    Schematic { family: Family::SI3, pieces: &[("d4+6 0 g2", "d5+2 5 g2+4", "N:a,x,x", "N:x,x,a")] },
    Schematic {
        family: Family::SI4,
        pieces: &[("g1+g2+g5 g1+g2+g5 g1+g2+g5", "g1+g2+g5 g1+g2+g5 g1+g2+g5", "N:a,x,x", "N:x,x,a")],
    },
    Schematic { family: Family::SI5, pieces: &[("g1 2", "g1+3 1", "N:x,x E:a", "N:a,x E:x")] },
    Schematic { family: Family::SI6, pieces: &[("g1+g2+g5 g1", "g1+g2+g5 g1", "N:x,x E:a", "N:a,x E:x")] },
    Schematic { family: Family::SI7, pieces: &[("d5+2 5", "d4+6 0", "N:x,x E:a", "N:a,x E:x")] },
    Schematic {
        family: Family::SI8,
        pieces: &[("g1+3 10", "g1+3 7", "N:x,y", "N:x,y"), ("g4+2 / 8", "g4+2 / 9", "E:y,x", "E:y,x")],
    },
    Schematic {
        family: Family::SI9,
        pieces: &[("10 g2+4", "8 g2+4", "N:x,y", "N:x,y"), ("g4+2 / 8", "g4+2 / 10", "E:y,x", "E:y,x")],
    },
    Schematic { family: Family::Stab1, pieces: &[("g7", "g7", "N:x E:y", "N:y E:x")] },
    Schematic { family: Family::Stab2, pieces: &[("g7 g8", "g7 g8", "N:x,y", "N:y,x")] },
    Schematic { family: Family::Stab3, pieces: &[("d2+5", "d6+4", "N:x E:y", "N:y E:x")] },
    Schematic { family: Family::Stab4, pieces: &[("d2+5 g2+4", "d6+4 g2", "N:x,y", "N:y,x")] },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Style {
    Black,
    Gray,
    Dotted,
    Dashed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Layer {
    pub style: Style,
    pub tile: Tile,
}

/// A labeled edge of a piece: cell, side, and the letter before and after.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelEdge {
    pub row: usize,
    pub col: usize,
    pub dir: Dir,
    pub before: char,
    pub after: char,
}

/// A rectangular fragment of a schematic instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub height: usize,
    pub width: usize,
    pub before: Vec<Vec<Layer>>,
    pub after: Vec<Vec<Layer>>,
    pub labels: Vec<LabelEdge>,
}

/// Concrete tiles of every piece, before and after the move.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variant {
    pub before: Vec<Vec<Tile>>,
    pub after: Vec<Vec<Tile>>,
}

/// One symmetric image of a schematic, with all optional-arc choices
/// expanded into variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub pieces: Vec<Piece>,
    pub variants: Vec<Variant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRule {
    pub family: Family,
    pub instances: Vec<RuleInstance>,
}

/// Where a move applies. For schematic families `anchors` holds the top-left
/// cell of each piece and `bindings` maps each label letter to the boundary
/// slot it matched. Injection and ejection use one anchor `(i, j)`; a label
/// swap uses one anchor holding the two slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSite {
    pub family: Family,
    pub instance: usize,
    pub variant: usize,
    pub anchors: Vec<(usize, usize)>,
    pub bindings: Vec<(char, usize)>,
}

fn parse_tile_number(s: &str) -> Tile {
    let k: usize = s.parse().unwrap_or_else(|_| panic!("bad tile {s:?} in schematic"));
    Tile::from_index(k).unwrap_or_else(|| panic!("bad tile {s:?} in schematic"))
}

fn parse_cell(tok: &str) -> Vec<Layer> {
    let mut layers: Vec<Layer> = tok
        .split('+')
        .map(|l| {
            let (style, num) = match l.as_bytes()[0] {
                b'g' => (Style::Gray, &l[1..]),
                b'd' => (Style::Dotted, &l[1..]),
                b'e' => (Style::Dashed, &l[1..]),
                _ => (Style::Black, l),
            };
            Layer { style, tile: parse_tile_number(num) }
        })
        .filter(|l| l.tile != Tile::T0)
        .collect();
    layers.sort();
    layers
}

fn parse_cells(src: &str) -> (usize, usize, Vec<Vec<Layer>>) {
    let rows: Vec<Vec<Vec<Layer>>> =
        src.split('/').map(|row| row.split_whitespace().map(parse_cell).collect()).collect();
    let h = rows.len();
    let w = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == w), "ragged schematic {src:?}");
    (h, w, rows.into_iter().flatten().collect())
}

/// Labeled edges of an `h × w` fragment from `N:x,y E:z` notation.
fn parse_labels(h: usize, w: usize, src: &str) -> Vec<(usize, usize, Dir, char)> {
    let mut out = Vec::new();
    for part in src.split_whitespace() {
        let (side, list) = part.split_once(':').expect("side:letters");
        for (k, name) in list.split(',').enumerate() {
            let Some(ch) = name.chars().next() else { continue };
            let (r, c, d) = match side {
                "N" => (0, k, Dir::N),
                "E" => (k, w - 1, Dir::E),
                "S" => (h - 1, w - 1 - k, Dir::S),
                "W" => (h - 1 - k, 0, Dir::W),
                _ => panic!("bad side {side:?}"),
            };
            out.push((r, c, d, ch));
        }
    }
    out
}

fn parse_piece(src: &(&str, &str, &str, &str)) -> Piece {
    let (h, w, before) = parse_cells(src.0);
    let (h2, w2, after) = parse_cells(src.1);
    assert_eq!((h, w), (h2, w2), "before and after shapes differ");
    let lb = parse_labels(h, w, src.2);
    let la = parse_labels(h, w, src.3);
    assert_eq!(lb.len(), la.len(), "labels must cover the same edges");
    let mut labels: Vec<LabelEdge> = lb
        .iter()
        .zip(&la)
        .map(|(b, a)| {
            assert_eq!((b.0, b.1, b.2), (a.0, a.1, a.2), "labels must cover the same edges");
            LabelEdge { row: b.0, col: b.1, dir: b.2, before: b.3, after: a.3 }
        })
        .collect();
    labels.sort();
    Piece { height: h, width: w, before, after, labels }
}

/// Position of `(r, c)` of an `h × w` rectangle under a symmetry, using the
/// same convention as `Sym::cell`.
fn rect_cell(s: Sym, h: usize, w: usize, r: usize, c: usize) -> (usize, usize) {
    let (mut h, mut w, mut r, mut c) = (h, w, r, c);
    for _ in 0..s.quarter_turns() {
        let t = r;
        r = c;
        c = h - 1 - t;
        core::mem::swap(&mut h, &mut w);
    }
    if s.is_reflection() {
        c = w - 1 - c;
    }
    (r, c)
}

fn map_layers(cells: &[Vec<Layer>], f: impl Fn(Tile) -> Tile) -> Vec<Vec<Layer>> {
    cells
        .iter()
        .map(|ls| {
            let mut v: Vec<Layer> = ls.iter().map(|l| Layer { style: l.style, tile: f(l.tile) }).collect();
            v.sort();
            v
        })
        .collect()
}

impl Piece {
    fn transform(&self, s: Sym) -> Piece {
        let (h, w) = (self.height, self.width);
        let (h2, w2) = if s.quarter_turns() % 2 == 1 { (w, h) } else { (h, w) };
        let mut before = vec![Vec::new(); h * w];
        let mut after = vec![Vec::new(); h * w];
        let tb = map_layers(&self.before, |t| t.transform(s));
        let ta = map_layers(&self.after, |t| t.transform(s));
        for r in 0..h {
            for c in 0..w {
                let (r2, c2) = rect_cell(s, h, w, r, c);
                before[r2 * w2 + c2] = tb[r * w + c].clone();
                after[r2 * w2 + c2] = ta[r * w + c].clone();
            }
        }
        let mut labels: Vec<LabelEdge> = self
            .labels
            .iter()
            .map(|l| {
                let (r, c) = rect_cell(s, h, w, l.row, l.col);
                LabelEdge { row: r, col: c, dir: s.dir(l.dir), ..*l }
            })
            .collect();
        labels.sort();
        Piece { height: h2, width: w2, before, after, labels }
    }

    fn flip_crossings(&self) -> Piece {
        Piece {
            before: map_layers(&self.before, Tile::flip_crossing),
            after: map_layers(&self.after, Tile::flip_crossing),
            ..self.clone()
        }
    }

    fn reversed(&self) -> Piece {
        let labels = self.labels.iter().map(|l| LabelEdge { before: l.after, after: l.before, ..*l }).collect();
        Piece { before: self.after.clone(), after: self.before.clone(), labels, ..self.clone() }
    }
}

/// Rename letters in order of first appearance so that instances differing
/// only in letter names compare equal.
fn canonical_letters(pieces: &[Piece]) -> Vec<Piece> {
    let mut names: Vec<char> = Vec::new();
    for p in pieces {
        for l in &p.labels {
            if !names.contains(&l.before) {
                names.push(l.before);
            }
        }
    }
    let rename = |ch: char| (b'a' + names.iter().position(|&x| x == ch).expect("letter") as u8) as char;
    pieces
        .iter()
        .map(|p| Piece {
            labels: p
                .labels
                .iter()
                .map(|l| LabelEdge { before: rename(l.before), after: rename(l.after), ..*l })
                .collect(),
            ..p.clone()
        })
        .collect()
}

type Arc = (Dir, Dir);

fn norm(a: Arc) -> Arc {
    if a.0 <= a.1 {
        a
    } else {
        (a.1, a.0)
    }
}

fn arcs_of(t: Tile) -> Vec<Arc> {
    t.connections().arcs.iter().map(|&a| norm(a)).collect()
}

/// The non-crossing tile with exactly these arcs.
pub fn tile_from_arcs(arcs: &[(Dir, Dir)]) -> Option<Tile> {
    let mut want: Vec<Arc> = arcs.iter().map(|&a| norm(a)).collect();
    want.sort();
    Tile::ALL.into_iter().filter(|t| !t.is_crossing()).find(|&t| {
        let mut have = arcs_of(t);
        have.sort();
        have == want
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum VarKey {
    Gray(usize, usize, Arc),
    Styled(usize, usize, Style),
}

fn collect_vars(pieces: &[Piece]) -> Vec<VarKey> {
    let mut keys = BTreeSet::new();
    for (pi, p) in pieces.iter().enumerate() {
        for side in [&p.before, &p.after] {
            for (ci, layers) in side.iter().enumerate() {
                for l in layers {
                    match l.style {
                        Style::Black => {}
                        Style::Gray => {
                            for a in arcs_of(l.tile) {
                                keys.insert(VarKey::Gray(pi, ci, a));
                            }
                        }
                        s => {
                            keys.insert(VarKey::Styled(pi, ci, s));
                        }
                    }
                }
            }
        }
    }
    keys.into_iter().collect()
}

fn realize(pi: usize, ci: usize, layers: &[Layer], on: &dyn Fn(VarKey) -> bool) -> Option<Tile> {
    if let Some(l) = layers.iter().find(|l| l.tile.is_crossing()) {
        assert!(layers.len() == 1 && l.style == Style::Black, "crossing tiles cannot be layered");
        return Some(l.tile);
    }
    let mut arcs: Vec<Arc> = layers.iter().filter(|l| l.style == Style::Black).flat_map(|l| arcs_of(l.tile)).collect();
    for l in layers.iter().filter(|l| matches!(l.style, Style::Dotted | Style::Dashed)) {
        if on(VarKey::Styled(pi, ci, l.style)) {
            let new = arcs_of(l.tile);
            let touches = |a: &Arc| new.iter().any(|b| a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1);
            arcs.retain(|a| !touches(a));
            arcs.extend(new);
        }
    }
    for l in layers.iter().filter(|l| l.style == Style::Gray) {
        for a in arcs_of(l.tile) {
            if on(VarKey::Gray(pi, ci, a)) {
                arcs.push(a);
            }
        }
    }
    let mut ends: Vec<Dir> = arcs.iter().flat_map(|a| [a.0, a.1]).collect();
    ends.sort();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    tile_from_arcs(&arcs)
}

/// Interior suitable connectivity of a fragment's own cells.
fn fragment_connected(p: &Piece, tiles: &[Tile]) -> bool {
    let (h, w) = (p.height, p.width);
    (0..h).all(|r| {
        (0..w).all(|c| {
            let t = tiles[r * w + c];
            (c + 1 == w || t.has(Dir::E) == tiles[r * w + c + 1].has(Dir::W))
                && (r + 1 == h || t.has(Dir::S) == tiles[(r + 1) * w + c].has(Dir::N))
        })
    })
}

fn expand(pieces: &[Piece]) -> Vec<Variant> {
    let vars = collect_vars(pieces);
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << vars.len() {
        let on = |k: VarKey| vars.iter().position(|&v| v == k).is_some_and(|i| bits >> i & 1 == 1);
        let mut before = Vec::new();
        let mut after = Vec::new();
        let mut ok = true;
        for (pi, p) in pieces.iter().enumerate() {
            let mut b = Vec::new();
            let mut a = Vec::new();
            for ci in 0..p.before.len() {
                match (realize(pi, ci, &p.before[ci], &on), realize(pi, ci, &p.after[ci], &on)) {
                    (Some(x), Some(y)) => {
                        b.push(x);
                        a.push(y);
                    }
                    _ => ok = false,
                }
            }
            before.push(b);
            after.push(a);
        }
        let connected = |tiles: &[Vec<Tile>]| pieces.iter().zip(tiles).all(|(p, t)| fragment_connected(p, t));
        if ok && connected(&before) && connected(&after) {
            out.insert(Variant { before, after });
        }
    }
    out.into_iter().collect()
}

/// The compiled move table. Build it once with `compile_rules` and share it.
#[derive(Clone, Debug)]
pub struct RuleTable {
    rules: Vec<MoveRule>,
}

/// Compile every schematic into its instance set.
pub fn compile_rules() -> RuleTable {
    let mut rules: Vec<MoveRule> = Vec::new();
    for sch in SCHEMATICS {
        let base: Vec<Piece> = sch.pieces.iter().map(parse_piece).collect();
        let mut seen: Vec<Vec<Piece>> = Vec::new();
        let mut instances = Vec::new();
        for s in Sym::ALL {
            for flip in [false, true] {
                for rev in [false, true] {
                    let pieces: Vec<Piece> = base
                        .iter()
                        .map(|p| {
                            let mut q = p.transform(s);
                            if flip {
                                q = q.flip_crossings();
                            }
                            if rev {
                                q = q.reversed();
                            }
                            q
                        })
                        .collect();
                    let key = canonical_letters(&pieces);
                    if seen.contains(&key) {
                        continue;
                    }
                    seen.push(key);
                    let variants = expand(&pieces);
                    instances.push(RuleInstance { pieces, variants });
                }
            }
        }
        match rules.iter_mut().find(|r| r.family == sch.family) {
            Some(r) => r.instances.extend(instances),
            None => rules.push(MoveRule { family: sch.family, instances }),
        }
    }
    RuleTable { rules }
}

struct Matched {
    anchors: Vec<(usize, usize)>,
    bindings: Vec<(char, usize)>,
    result: VirtualMosaic,
}

fn piece_fits(grid: &MosaicGrid, tiles: &[Tile], p: &Piece, (r0, c0): (usize, usize)) -> bool {
    let n = grid.n();
    if r0 + p.height > n || c0 + p.width > n {
        return false;
    }
    (0..p.height).all(|r| (0..p.width).all(|c| grid.get(r0 + r, c0 + c) == tiles[r * p.width + c]))
}

fn match_instance(vm: &VirtualMosaic, inst: &RuleInstance, var: &Variant, anchor: (usize, usize)) -> Option<Matched> {
    let n = vm.n();
    let grid = vm.grid();
    let pairing = vm.pairing();
    let mut anchors: Vec<(usize, usize)> = Vec::new();
    // (letter before, letter after, slot)
    let mut edges: Vec<(char, char, usize)> = Vec::new();
    for (pi, p) in inst.pieces.iter().enumerate() {
        let at = if pi == 0 {
            anchor
        } else {
            let (l, s) = p.labels.iter().find_map(|l| {
                edges.iter().find(|e| e.0 == l.before).map(|e| (l, pairing.partner(e.2)))
            })?;
            let (r, c, d) = slot_cell(n, s);
            if d != l.dir || r < l.row || c < l.col {
                return None;
            }
            (r - l.row, c - l.col)
        };
        if !piece_fits(grid, &var.before[pi], p, at) {
            return None;
        }
        for (q, &(r, c)) in inst.pieces.iter().zip(&anchors) {
            let disjoint = at.0 + p.height <= r || r + q.height <= at.0 || at.1 + p.width <= c || c + q.width <= at.1;
            if !disjoint {
                return None;
            }
        }
        for l in &p.labels {
            let s = cell_slot(n, at.0 + l.row, at.1 + l.col, l.dir)?;
            edges.push((l.before, l.after, s));
        }
        anchors.push(at);
    }
    let labeled: Vec<usize> = edges.iter().map(|e| e.2).collect();
    let mut partner: Vec<usize> = pairing.partners().to_vec();
    let mut external: Vec<(char, usize)> = Vec::new();
    for (k, &(ch, _, s)) in edges.iter().enumerate() {
        let others: Vec<usize> = edges.iter().filter(|e| e.0 == ch && e.2 != s).map(|e| e.2).collect();
        match others.as_slice() {
            [] => {
                let q = pairing.partner(s);
                if labeled.contains(&q) {
                    return None;
                }
                external.push((ch, q));
            }
            [t] => {
                if pairing.partner(s) != *t {
                    return None;
                }
            }
            _ => panic!("letter used more than twice in instance {k}"),
        }
    }
    for &s in &labeled {
        partner[s] = usize::MAX;
    }
    for &(_, q) in &external {
        partner[q] = usize::MAX;
    }
    for &(_, ch, s) in &edges {
        let t = match edges.iter().find(|e| e.1 == ch && e.2 != s) {
            Some(e) => e.2,
            None => external.iter().find(|e| e.0 == ch)?.1,
        };
        partner[s] = t;
        partner[t] = s;
    }
    let mut out = grid.clone();
    for (pi, p) in inst.pieces.iter().enumerate() {
        let (r0, c0) = anchors[pi];
        for r in 0..p.height {
            for c in 0..p.width {
                out.set(r0 + r, c0 + c, var.after[pi][r * p.width + c]);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..partner.len()).filter(|&a| a < partner[a]).map(|a| (a, partner[a])).collect();
    let pairing = BoundaryPairing::new(n, &pairs).ok()?;
    let result = VirtualMosaic::new(out, pairing).ok()?;
    let mut bindings: Vec<(char, usize)> = edges.iter().map(|e| (e.0, e.2)).collect();
    bindings.sort();
    bindings.dedup();
    Some(Matched { anchors, bindings, result })
}

impl RuleTable {
    pub fn rules(&self) -> &[MoveRule] {
        &self.rules
    }

    pub fn rule(&self, family: Family) -> Option<&MoveRule> {
        self.rules.iter().find(|r| r.family == family)
    }

    /// `(family, instance count, concrete variant count)` for every schematic family.
    pub fn counts(&self) -> Vec<(Family, usize, usize)> {
        self.rules
            .iter()
            .map(|r| (r.family, r.instances.len(), r.instances.iter().map(|i| i.variants.len()).sum()))
            .collect()
    }

    /// Every site of `family` on `vm` whose application changes the mosaic,
    /// in row-major anchor order and then instance and variant order.
    pub fn find_sites(&self, vm: &VirtualMosaic, family: Family) -> Vec<MoveSite> {
        let n = vm.n();
        let site = |instance, anchors, bindings| MoveSite { family, instance, variant: 0, anchors, bindings };
        match family {
            Family::Inject => {
                return (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|a| site(0, vec![a], vec![])).collect()
            }
            Family::Eject => {
                if n < 3 {
                    return Vec::new();
                }
                return (0..n - 1)
                    .flat_map(|i| (0..n - 1).map(move |j| (i, j)))
                    .filter(|&(i, j)| eject(vm, i, j).is_ok())
                    .map(|a| site(0, vec![a], vec![]))
                    .collect();
            }
            Family::LabelSwap => {
                let ends = boundary_endpoint_profile(vm.grid());
                let p = vm.pairing();
                let m = 4 * n;
                return (0..m)
                    .flat_map(|s| (s + 1..m).map(move |t| (s, t)))
                    .filter(|&(s, t)| !ends[s] && !ends[t] && p.partner(s) != t)
                    .map(|a| site(0, vec![a], vec![]))
                    .collect();
            }
            Family::ClassicalImport => {
                return if classical_import(vm.grid()).is_ok() { vec![site(0, vec![(0, 0)], vec![])] } else { vec![] };
            }
            _ => {}
        }
        let Some(rule) = self.rule(family) else { return Vec::new() };
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                for (ii, inst) in rule.instances.iter().enumerate() {
                    for (vi, var) in inst.variants.iter().enumerate() {
                        if !piece_fits(vm.grid(), &var.before[0], &inst.pieces[0], (r, c)) {
                            continue;
                        }
                        if let Some(m) = match_instance(vm, inst, var, (r, c)) {
                            if m.result != *vm {
                                out.push(MoveSite {
                                    family,
                                    instance: ii,
                                    variant: vi,
                                    anchors: m.anchors,
                                    bindings: m.bindings,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Apply a site found by `find_sites`.
    pub fn apply(&self, vm: &VirtualMosaic, site: &MoveSite) -> Result<VirtualMosaic, MoveError> {
        let first = *site.anchors.first().ok_or(MoveError::StaleSite)?;
        match site.family {
            Family::Inject => return inject(vm, first.0, first.1),
            Family::Eject => return eject(vm, first.0, first.1),
            Family::LabelSwap => return label_swap(vm, first.0, first.1),
            Family::ClassicalImport => return classical_import(vm.grid()),
            _ => {}
        }
        let inst = self
            .rule(site.family)
            .and_then(|r| r.instances.get(site.instance))
            .ok_or(MoveError::StaleSite)?;
        let var = inst.variants.get(site.variant).ok_or(MoveError::StaleSite)?;
        let m = match_instance(vm, inst, var, first).ok_or(MoveError::StaleSite)?;
        if m.anchors != site.anchors {
            return Err(MoveError::StaleSite);
        }
        Ok(m.result)
    }
}

/// Exchange the partners of two slots that carry no strand endpoint.
pub fn label_swap(vm: &VirtualMosaic, s: usize, t: usize) -> Result<VirtualMosaic, MoveError> {
    let n = vm.n();
    let m = 4 * n;
    let profile = boundary_endpoint_profile(vm.grid());
    if s >= m || t >= m || s == t || profile[s] || profile[t] || vm.pairing().partner(s) == t {
        return Err(MoveError::StaleSite);
    }
    let mut partner = vm.pairing().partners().to_vec();
    let (ps, pt) = (partner[s], partner[t]);
    partner[s] = pt;
    partner[pt] = s;
    partner[t] = ps;
    partner[ps] = t;
    Ok(VirtualMosaic::new(vm.grid().clone(), BoundaryPairing::from_partner(n, partner))?)
}

/// Slot of an n-mosaic after inserting two rows before row `i` and two
/// columns before column `j`.
fn inject_slot(n: usize, i: usize, j: usize, s: usize) -> usize {
    let m = n + 2;
    let rmap = |r: usize| if r < i { r } else { r + 2 };
    let cmap = |c: usize| if c < j { c } else { c + 2 };
    let (r, c, d) = slot_cell(n, s);
    let (r2, c2) = match d {
        Dir::N => (0, cmap(c)),
        Dir::E => (rmap(r), m - 1),
        Dir::S => (m - 1, cmap(c)),
        Dir::W => (rmap(r), 0),
    };
    cell_slot(m, r2, c2, d).expect("boundary cell")
}

/// The new boundary slot pairs created by an `(i, j)` injection into an n-mosaic.
fn injected_pairs(n: usize, i: usize, j: usize) -> [(usize, usize); 4] {
    let m = n + 2;
    let s = |r, c, d| cell_slot(m, r, c, d).expect("boundary cell");
    [
        (s(0, j, Dir::N), s(0, j + 1, Dir::N)),
        (s(i, m - 1, Dir::E), s(i + 1, m - 1, Dir::E)),
        (s(m - 1, j, Dir::S), s(m - 1, j + 1, Dir::S)),
        (s(i, 0, Dir::W), s(i + 1, 0, Dir::W)),
    ]
}

/// Insert two rows after the first `i` rows and two columns after the first
/// `j` columns. Strands crossing an insertion line are extended straight
/// across the new strip and the new boundary edges are paired adjacently.
pub fn inject(vm: &VirtualMosaic, i: usize, j: usize) -> Result<VirtualMosaic, MoveError> {
    let n = vm.n();
    if i > n || j > n {
        return Err(MoveError::OutOfRange { i, j, n });
    }
    let m = n + 2;
    let g = vm.grid();
    let rmap = |r: usize| if r < i { r } else { r + 2 };
    let cmap = |c: usize| if c < j { c } else { c + 2 };
    let mut out = MosaicGrid::blank(m);
    for r in 0..n {
        for c in 0..n {
            out.set(rmap(r), cmap(c), g.get(r, c));
        }
    }
    for c in 0..n {
        let through = if i < n { g.get(i, c).has(Dir::N) } else { g.get(n - 1, c).has(Dir::S) };
        if through {
            out.set(i, cmap(c), Tile::T6);
            out.set(i + 1, cmap(c), Tile::T6);
        }
    }
    for r in 0..n {
        let through = if j < n { g.get(r, j).has(Dir::W) } else { g.get(r, n - 1).has(Dir::E) };
        if through {
            out.set(rmap(r), j, Tile::T5);
            out.set(rmap(r), j + 1, Tile::T5);
        }
    }
    let mut partner = vec![0; 4 * m];
    for s in 0..4 * n {
        partner[inject_slot(n, i, j, s)] = inject_slot(n, i, j, vm.pairing().partner(s));
    }
    for (a, b) in injected_pairs(n, i, j) {
        partner[a] = b;
        partner[b] = a;
    }
    Ok(VirtualMosaic::new(out, BoundaryPairing::from_partner(m, partner))?)
}

/// Remove rows `i, i + 1` and columns `j, j + 1` when they form the image of
/// an `(i, j)` injection.
pub fn eject(vm: &VirtualMosaic, i: usize, j: usize) -> Result<VirtualMosaic, MoveError> {
    let m = vm.n();
    if m < 3 || i + 2 > m || j + 2 > m {
        return Err(MoveError::OutOfRange { i, j, n: m });
    }
    let n = m - 2;
    let g = vm.grid();
    let in_rows = |r: usize| r == i || r == i + 1;
    let in_cols = |c: usize| c == j || c == j + 1;
    for r in 0..m {
        for c in 0..m {
            let t = g.get(r, c);
            let ok = match (in_rows(r), in_cols(c)) {
                (true, true) => t == Tile::T0,
                (true, false) => matches!(t, Tile::T0 | Tile::T6),
                (false, true) => matches!(t, Tile::T0 | Tile::T5),
                (false, false) => true,
            };
            if !ok {
                return Err(MoveError::NotEjectable { row: r, col: c });
            }
        }
    }
    for (a, b) in injected_pairs(n, i, j) {
        if vm.pairing().partner(a) != b {
            let (row, col, _) = slot_cell(m, a);
            return Err(MoveError::NotEjectable { row, col });
        }
    }
    let rback = |r: usize| if r < i { r } else { r + 2 };
    let cback = |c: usize| if c < j { c } else { c + 2 };
    let mut out = MosaicGrid::blank(n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, g.get(rback(r), cback(c)));
        }
    }
    let forward: Vec<usize> = (0..4 * n).map(|s| inject_slot(n, i, j, s)).collect();
    let mut partner = vec![0; 4 * n];
    for s in 0..4 * n {
        let q = vm.pairing().partner(forward[s]);
        partner[s] = forward.iter().position(|&f| f == q).expect("old slots pair among themselves");
    }
    Ok(VirtualMosaic::new(out, BoundaryPairing::from_partner(n, partner))?)
}

/// Turn a closed classical n-mosaic into a virtual (n − 2)-mosaic by
/// deleting the outer ring and pairing the inner boundary edges that the
/// ring connected. Remaining edges are paired adjacently.
pub fn classical_import(classical: &MosaicGrid) -> Result<VirtualMosaic, MoveError> {
    let n = classical.n();
    if let Some(slot) = boundary_endpoint_profile(classical).iter().position(|&e| e) {
        return Err(MoveError::NotClosed { slot });
    }
    if n < 4 {
        return Err(MoveError::TooSmall { n });
    }
    let k = n - 2;
    let inner = |r: usize, c: usize| (1..n - 1).contains(&r) && (1..n - 1).contains(&c);
    let mut visited = vec![[false; 2]; n * n];
    let mut pairs = Vec::new();
    for s in 0..4 * k {
        let (r, c, d) = slot_cell(k, s);
        let (mut r, mut c, mut d) = (r + 1, c + 1, d);
        if !classical.get(r, c).has(d) {
            continue;
        }
        loop {
            let (dr, dc) = d.offset();
            r = r.wrapping_add_signed(dr);
            c = c.wrapping_add_signed(dc);
            let from = d.opposite();
            if inner(r, c) {
                let t = cell_slot(k, r - 1, c - 1, from).expect("entered through the inner boundary");
                if s < t {
                    pairs.push((s, t));
                }
                break;
            }
            let tile = classical.get(r, c);
            let arc = tile.arc_at(from).expect("suitably connected ring");
            visited[r * n + c][arc] = true;
            d = tile.exit(from).expect("suitably connected ring");
        }
    }
    for r in 0..n {
        for c in 0..n {
            if inner(r, c) {
                continue;
            }
            let arcs = classical.get(r, c).connections().arcs.len();
            if (0..arcs).any(|a| !visited[r * n + c][a]) {
                return Err(MoveError::RingComponent { row: r, col: c });
            }
        }
    }
    let mut cells = Vec::with_capacity(k * k);
    for r in 1..n - 1 {
        for c in 1..n - 1 {
            cells.push(classical.get(r, c));
        }
    }
    let grid = MosaicGrid::new(k, cells).expect("k*k cells");
    let pairing = complete_pairing(&grid, &pairs)?;
    Ok(VirtualMosaic::new(grid, pairing)?)
}

/// Precomputed crossing-reducing Reidemeister patterns.
#[derive(Clone, Debug)]
pub struct ReductionIndex {
    patterns: Vec<(usize, usize, Vec<Tile>)>,
}

impl ReductionIndex {
    pub fn new(table: &RuleTable) -> Self {
        let mut patterns = BTreeSet::new();
        for fam in [Family::R1, Family::R2, Family::R2b] {
            let Some(rule) = table.rule(fam) else { continue };
            for inst in &rule.instances {
                let p = &inst.pieces[0];
                for v in &inst.variants {
                    let crossings = |ts: &[Tile]| ts.iter().filter(|t| t.is_crossing()).count();
                    if crossings(&v.before[0]) > crossings(&v.after[0]) {
                        patterns.insert((p.height, p.width, v.before[0].clone()));
                    }
                }
            }
        }
        ReductionIndex { patterns: patterns.into_iter().collect() }
    }

    /// Whether some R1 or R2 move removes crossings from this grid.
    pub fn admits(&self, grid: &MosaicGrid) -> bool {
        let n = grid.n();
        self.patterns.iter().any(|(h, w, tiles)| {
            let probe = Piece { height: *h, width: *w, before: Vec::new(), after: Vec::new(), labels: Vec::new() };
            (0..n).any(|r| (0..n).any(|c| piece_fits(grid, tiles, &probe, (r, c))))
        })
    }
}

/// Whether some R1 or R2 move removes crossings from this grid. Builds the
/// rule table on every call; hold a `ReductionIndex` for repeated queries.
pub fn has_trivial_reduction(grid: &MosaicGrid) -> bool {
    ReductionIndex::new(&compile_rules()).admits(grid)
}

/// Render an instance's pieces as text, one piece per paragraph.
pub fn describe_instance(inst: &RuleInstance, variant: usize) -> String {
    use core::fmt::Write as _;
    let mut s = String::new();
    let v = &inst.variants[variant];
    for (pi, p) in inst.pieces.iter().enumerate() {
        for r in 0..p.height {
            let row = |ts: &[Tile]| {
                (0..p.width).map(|c| alloc::format!("{}", ts[r * p.width + c])).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(s, "{}  ->  {}", row(&v.before[pi]), row(&v.after[pi]));
        }
        for l in &p.labels {
            let _ = writeln!(s, "  ({},{}) {}: {} -> {}", l.row, l.col, l.dir, l.before, l.after);
        }
    }
    s
}

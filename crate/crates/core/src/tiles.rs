//! The eleven mosaic tiles, the n×n grid, and suitable connectivity.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Edge direction of a tile, numbered clockwise from north.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn from_index(i: usize) -> Dir {
        Dir::ALL[i & 3]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Dir {
        Dir::from_index(self.index() + 2)
    }

    /// Unit vector in tile-local coordinates, x east and y north.
    pub fn vector(self) -> (i32, i32) {
        match self {
            Dir::N => (0, 1),
            Dir::E => (1, 0),
            Dir::S => (0, -1),
            Dir::W => (-1, 0),
        }
    }

    /// Row and column offset of the neighbouring cell across this edge.
    pub fn offset(self) -> (isize, isize) {
        match self {
            Dir::N => (-1, 0),
            Dir::E => (0, 1),
            Dir::S => (1, 0),
            Dir::W => (0, -1),
        }
    }

    fn bit(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dir::N => "N",
            Dir::E => "E",
            Dir::S => "S",
            Dir::W => "W",
        };
        f.write_str(s)
    }
}

/// One of the eleven standard tiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Tile {
    T0 = 0,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
}

/// Arcs of a tile and, for crossing tiles, which arc passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connections {
    pub arcs: &'static [(Dir, Dir)],
    pub over: Option<usize>,
}

const NS: (Dir, Dir) = (Dir::N, Dir::S);
const EW: (Dir, Dir) = (Dir::E, Dir::W);

const ARCS: [&[(Dir, Dir)]; 11] = [
    &[],
    &[(Dir::S, Dir::W)],
    &[(Dir::E, Dir::S)],
    &[(Dir::N, Dir::E)],
    &[(Dir::N, Dir::W)],
    &[EW],
    &[NS],
    &[(Dir::N, Dir::E), (Dir::S, Dir::W)],
    &[(Dir::N, Dir::W), (Dir::E, Dir::S)],
    &[NS, EW],
    &[NS, EW],
];

const MASK: [u8; 11] = [0, 0b1100, 0b0110, 0b0011, 0b1001, 0b1010, 0b0101, 15, 15, 15, 15];

/// Tile permutation induced by a clockwise quarter turn.
const ROT: [u8; 11] = [0, 4, 1, 2, 3, 6, 5, 8, 7, 10, 9];
/// Tile permutation induced by the east-west mirror.
const REF: [u8; 11] = [0, 2, 1, 4, 3, 5, 6, 8, 7, 9, 10];

const fn sym_table() -> [[u8; 11]; 8] {
    let mut t = [[0u8; 11]; 8];
    let mut s = 0;
    while s < 8 {
        let mut k = 0;
        while k < 11 {
            let mut v = k as u8;
            let mut r = 0;
            while r < s % 4 {
                v = ROT[v as usize];
                r += 1;
            }
            if s >= 4 {
                v = REF[v as usize];
            }
            t[s][k] = v;
            k += 1;
        }
        s += 1;
    }
    t
}

/// `TILE_SYM[s][k]` is the image of tile kind `k` under symmetry `s`.
pub const TILE_SYM: [[u8; 11]; 8] = sym_table();

impl Tile {
    pub const ALL: [Tile; 11] = [
        Tile::T0,
        Tile::T1,
        Tile::T2,
        Tile::T3,
        Tile::T4,
        Tile::T5,
        Tile::T6,
        Tile::T7,
        Tile::T8,
        Tile::T9,
        Tile::T10,
    ];

    pub fn from_index(i: usize) -> Option<Tile> {
        Tile::ALL.get(i).copied()
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn connections(self) -> Connections {
        let over = match self {
            Tile::T9 => Some(0),
            Tile::T10 => Some(1),
            _ => None,
        };
        Connections { arcs: ARCS[self.index()], over }
    }

    /// True if the tile has a connection point on edge `d`.
    pub fn has(self, d: Dir) -> bool {
        MASK[self.index()] & d.bit() != 0
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, Tile::T9 | Tile::T10)
    }

    /// The edge where a strand entering through `d` leaves the tile.
    pub fn exit(self, d: Dir) -> Option<Dir> {
        ARCS[self.index()].iter().find_map(|&(a, b)| {
            if a == d {
                Some(b)
            } else if b == d {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Index of the arc touching edge `d`.
    pub fn arc_at(self, d: Dir) -> Option<usize> {
        ARCS[self.index()].iter().position(|&(a, b)| a == d || b == d)
    }

    /// For crossing tiles, whether the strand through edge `d` passes over.
    pub fn is_over_at(self, d: Dir) -> bool {
        match self {
            Tile::T9 => matches!(d, Dir::N | Dir::S),
            Tile::T10 => matches!(d, Dir::E | Dir::W),
            _ => false,
        }
    }

    pub fn transform(self, s: Sym) -> Tile {
        Tile::ALL[TILE_SYM[s.0 as usize][self.index()] as usize]
    }

    /// Exchange T9 and T10, leaving other kinds alone.
    pub fn flip_crossing(self) -> Tile {
        match self {
            Tile::T9 => Tile::T10,
            Tile::T10 => Tile::T9,
            t => t,
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index())
    }
}

/// Element of the dihedral group of the square: `k` clockwise quarter turns
/// followed by the east-west mirror when `k >= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u8);

impl Sym {
    pub const ALL: [Sym; 8] = [Sym(0), Sym(1), Sym(2), Sym(3), Sym(4), Sym(5), Sym(6), Sym(7)];

    pub fn quarter_turns(self) -> usize {
        (self.0 % 4) as usize
    }

    pub fn is_reflection(self) -> bool {
        self.0 >= 4
    }

    pub fn dir(self, d: Dir) -> Dir {
        let r = Dir::from_index(d.index() + self.quarter_turns());
        if self.is_reflection() {
            Dir::from_index(4 - r.index())
        } else {
            r
        }
    }

    pub fn cell(self, n: usize, r: usize, c: usize) -> (usize, usize) {
        let (mut r, mut c) = (r, c);
        for _ in 0..self.quarter_turns() {
            let t = r;
            r = c;
            c = n - 1 - t;
        }
        if self.is_reflection() {
            c = n - 1 - c;
        }
        (r, c)
    }

    pub fn slot(self, n: usize, s: usize) -> usize {
        let m = 4 * n;
        let s = (s + n * self.quarter_turns()) % m;
        if self.is_reflection() {
            (m + n - 1 - s) % m
        } else {
            s
        }
    }
}

/// Cell and outward edge of boundary slot `s` on an n-mosaic.
pub fn slot_cell(n: usize, s: usize) -> (usize, usize, Dir) {
    let k = s % n;
    match s / n {
        0 => (0, k, Dir::N),
        1 => (k, n - 1, Dir::E),
        2 => (n - 1, n - 1 - k, Dir::S),
        _ => (n - 1 - k, 0, Dir::W),
    }
}

/// Boundary slot of the outward edge `d` of cell `(r, c)`, if it is on the boundary.
pub fn cell_slot(n: usize, r: usize, c: usize, d: Dir) -> Option<usize> {
    match d {
        Dir::N if r == 0 => Some(c),
        Dir::E if c == n - 1 => Some(n + r),
        Dir::S if r == n - 1 => Some(2 * n + (n - 1 - c)),
        Dir::W if c == 0 => Some(3 * n + (n - 1 - r)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridError {
    ZeroSize,
    WrongCellCount { expected: usize, found: usize },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::ZeroSize => write!(f, "grid size must be at least 1"),
            GridError::WrongCellCount { expected, found } => {
                write!(f, "expected {expected} cells, found {found}")
            }
        }
    }
}

impl core::error::Error for GridError {}

/// An n×n grid of tiles, row-major with row 0 at the top.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MosaicGrid {
    n: usize,
    cells: Vec<Tile>,
}

impl MosaicGrid {
    pub fn new(n: usize, cells: Vec<Tile>) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::ZeroSize);
        }
        if cells.len() != n * n {
            return Err(GridError::WrongCellCount { expected: n * n, found: cells.len() });
        }
        Ok(MosaicGrid { n, cells })
    }

    pub fn blank(n: usize) -> Self {
        assert!(n > 0, "grid size must be at least 1");
        MosaicGrid { n, cells: vec![Tile::T0; n * n] }
    }

    pub fn from_rows(rows: &[&[Tile]]) -> Result<Self, GridError> {
        let n = rows.len();
        let cells: Vec<Tile> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        MosaicGrid::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Tile] {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> Tile {
        self.cells[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, t: Tile) {
        self.cells[r * self.n + c] = t;
    }

    pub fn crossing_count(&self) -> usize {
        self.cells.iter().filter(|t| t.is_crossing()).count()
    }

    /// Apply a dihedral symmetry to positions and tile kinds together.
    pub fn transform(&self, s: Sym) -> MosaicGrid {
        let n = self.n;
        let mut out = MosaicGrid::blank(n);
        for r in 0..n {
            for c in 0..n {
                let (r2, c2) = s.cell(n, r, c);
                out.set(r2, c2, self.get(r, c).transform(s));
            }
        }
        out
    }

    /// Exchange every T9 with T10.
    pub fn flip_crossings(&self) -> MosaicGrid {
        MosaicGrid { n: self.n, cells: self.cells.iter().map(|t| t.flip_crossing()).collect() }
    }
}

/// Result of the interior connectivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub ok: bool,
    pub violations: Vec<(usize, usize, Dir)>,
}

/// Check every interior edge shared by two cells. Boundary edges are not checked.
pub fn interior_suitably_connected(grid: &MosaicGrid) -> ConnectivityReport {
    let n = grid.n();
    let mut violations = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let t = grid.get(r, c);
            if c + 1 < n && t.has(Dir::E) != grid.get(r, c + 1).has(Dir::W) {
                violations.push((r, c, Dir::E));
            }
            if r + 1 < n && t.has(Dir::S) != grid.get(r + 1, c).has(Dir::N) {
                violations.push((r, c, Dir::S));
            }
        }
    }
    ConnectivityReport { ok: violations.is_empty(), violations }
}

/// Which of the 4n boundary slots carry a strand endpoint.
pub fn boundary_endpoint_profile(grid: &MosaicGrid) -> Vec<bool> {
    let n = grid.n();
    (0..4 * n)
        .map(|s| {
            let (r, c, d) = slot_cell(n, s);
            grid.get(r, c).has(d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_agree_with_arcs() {
        for t in Tile::ALL {
            for d in Dir::ALL {
                let in_arc = t.connections().arcs.iter().any(|&(a, b)| a == d || b == d);
                assert_eq!(in_arc, t.has(d), "{t} {d}");
            }
        }
    }

    #[test]
    fn east_and_south_sets() {
        let east: Vec<Tile> = Tile::ALL.iter().copied().filter(|t| t.has(Dir::E)).collect();
        let south: Vec<Tile> = Tile::ALL.iter().copied().filter(|t| t.has(Dir::S)).collect();
        use Tile::*;
        assert_eq!(east, [T2, T3, T5, T7, T8, T9, T10]);
        assert_eq!(south, [T1, T2, T6, T7, T8, T9, T10]);
    }

    /// Map each arc through the direction permutation and look the image up.
    fn transform_by_arcs(t: Tile, s: Sym) -> Tile {
        let norm = |(a, b): (Dir, Dir)| if a < b { (a, b) } else { (b, a) };
        let mut img: Vec<(Dir, Dir)> =
            t.connections().arcs.iter().map(|&(a, b)| norm((s.dir(a), s.dir(b)))).collect();
        img.sort();
        let over_img = t.connections().over.map(|i| {
            let (a, b) = t.connections().arcs[i];
            norm((s.dir(a), s.dir(b)))
        });
        *Tile::ALL
            .iter()
            .find(|u| {
                let mut arcs: Vec<(Dir, Dir)> =
                    u.connections().arcs.iter().map(|&a| norm(a)).collect();
                arcs.sort();
                let over = u.connections().over.map(|i| norm(u.connections().arcs[i]));
                arcs == img && over == over_img
            })
            .unwrap()
    }

    #[test]
    fn symmetry_table_matches_arc_images() {
        for s in Sym::ALL {
            for t in Tile::ALL {
                assert_eq!(t.transform(s), transform_by_arcs(t, s), "{t} under {s:?}");
            }
        }
    }

    #[test]
    fn slot_round_trip() {
        for n in 1..6 {
            for s in 0..4 * n {
                let (r, c, d) = slot_cell(n, s);
                assert_eq!(cell_slot(n, r, c, d), Some(s));
            }
        }
    }

    #[test]
    fn symmetry_acts_on_slots_like_on_cells() {
        for n in 1..5 {
            for s in Sym::ALL {
                for k in 0..4 * n {
                    let (r, c, d) = slot_cell(n, k);
                    let (r2, c2) = s.cell(n, r, c);
                    assert_eq!(cell_slot(n, r2, c2, s.dir(d)), Some(s.slot(n, k)));
                }
            }
        }
    }

    #[test]
    fn profiles() {
        use Tile::*;
        let g = MosaicGrid::new(1, vec![T3]).unwrap();
        assert_eq!(boundary_endpoint_profile(&g), [true, true, false, false]);
        let g = MosaicGrid::new(1, vec![T7]).unwrap();
        assert_eq!(boundary_endpoint_profile(&g), [true; 4]);
        assert!(boundary_endpoint_profile(&MosaicGrid::blank(3)).iter().all(|b| !b));
    }

    #[test]
    fn suitably_connected_figure() {
        use Tile::*;
        let good = MosaicGrid::from_rows(&[&[T2, T1, T0], &[T3, T10, T1], &[T0, T3, T4]]);
        assert!(interior_suitably_connected(&good.unwrap()).ok);
        let bad = MosaicGrid::from_rows(&[&[T0, T1, T2], &[T10, T5, T6], &[T8, T9, T6]]).unwrap();
        let rep = interior_suitably_connected(&bad);
        assert!(!rep.ok);
        assert!(!rep.violations.is_empty());
    }
}

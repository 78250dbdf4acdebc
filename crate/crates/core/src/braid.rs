//! Virtual braid words and their compilation into virtual mosaics.
//!
//! A braid on k strands is drawn along the main diagonal of the board. Cells
//! on the diagonal `c - r = d` couple the adjacent lanes `d + o` and
//! `d + o + 1` for a fixed offset `o`. A T7 lets both lanes pass, a crossing
//! tile exchanges them, and the cells along the edges of the band hold the
//! single arcs T1 and T3. Strands enter through the top-left boundary and
//! leave through the bottom-right boundary, and the closure pairs every exit
//! slot with an entry slot.
//!
//! Virtual crossings are then removed from the front of the braid one at a
//! time. A virtual crossing whose strands reach the boundary without meeting
//! a classical crossing becomes a T7 and the two entry labels are exchanged.
//! A classical crossing in front of it is moved to the end of the braid
//! through the closure. When the two exits feeding it are adjacent lanes it is
//! placed on those lanes. Otherwise two fresh lanes are added along the top
//! of the band, the feeding exits are routed into them, and the crossing is
//! placed on the fresh lanes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::{complete_pairing, BoundaryPairing, VirtualMosaic};
use crate::tiles::{cell_slot, Dir, MosaicGrid, Tile};
use crate::trace::{canonical, trace_parts, GaussCode};

/// One letter of a virtual braid word. Indices are 1-based: generator `i`
/// acts on strand positions `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Strand `i` crosses over strand `i + 1`.
    Sigma(usize),
    /// Strand `i + 1` crosses over strand `i`.
    SigmaInv(usize),
    /// Strands `i` and `i + 1` exchange places at a virtual crossing.
    Virtual(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::Sigma(i) | Generator::SigmaInv(i) | Generator::Virtual(i) => i,
        }
    }

    pub fn is_virtual(self) -> bool {
        matches!(self, Generator::Virtual(_))
    }

    fn with_index(self, i: usize) -> Generator {
        match self {
            Generator::Sigma(_) => Generator::Sigma(i),
            Generator::SigmaInv(_) => Generator::SigmaInv(i),
            Generator::Virtual(_) => Generator::Virtual(i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::SigmaInv(i) => write!(f, "s{i}^-1"),
            Generator::Virtual(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidError {
    NoStrands,
    /// Letter `pos` (0-based) uses generator index `index`, which needs
    /// `index + 1` strands.
    IndexOutOfRange { pos: usize, index: usize },
    /// Token `pos` (0-based) is not a generator.
    Syntax { pos: usize, token: String },
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::NoStrands => write!(f, "a braid needs at least one strand"),
            BraidError::IndexOutOfRange { pos, index } => {
                write!(f, "letter {} uses generator index {index}, out of range", pos + 1)
            }
            BraidError::Syntax { pos, token } => write!(f, "token {} `{token}` is not a braid generator", pos + 1),
        }
    }
}

impl core::error::Error for BraidError {}

/// A virtual braid word on a fixed number of strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Generator>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for (pos, g) in letters.iter().enumerate() {
            let i = g.index();
            if i == 0 || i >= strands {
                return Err(BraidError::IndexOutOfRange { pos, index: i });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse whitespace-separated tokens `s<i>`, `s<i>^-1` and `v<i>`.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let bad = || BraidError::Syntax { pos, token: String::from(tok) };
            let (head, inverse) = match tok.strip_suffix("^-1") {
                Some(h) => (h, true),
                None => (tok, false),
            };
            let mut chars = head.chars();
            let kind = chars.next().ok_or_else(bad)?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let i: usize = digits.parse().map_err(|_| bad())?;
            letters.push(match (kind, inverse) {
                ('s', false) => Generator::Sigma(i),
                ('s', true) => Generator::SigmaInv(i),
                ('v', _) => Generator::Virtual(i),
                _ => return Err(bad()),
            });
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A cell of a staging mosaic: a standard tile or a virtual crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StagingCell {
    Tile(Tile),
    Virtual,
}

impl fmt::Display for StagingCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StagingCell::Tile(t) => write!(f, "{t}"),
            StagingCell::Virtual => f.write_str("V"),
        }
    }
}

/// A generator placed on the board: lower lane and time `r + c` of its cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Placed {
    gen: Generator,
    lane: usize,
    time: usize,
}

/// Lane structure of a braid drawn on an n×n board.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Band {
    n: usize,
    lanes: usize,
    offset: isize,
    letters: Vec<Placed>,
    /// `closure[x]` is the entry lane paired with the exit of lane `x`.
    closure: Vec<usize>,
}

impl Band {
    /// Row and column of the cell at `time` on the diagonal of `lane`.
    fn cell(&self, lane: usize, time: usize) -> Option<(usize, usize)> {
        let d = lane as isize - self.offset;
        let t = time as isize;
        if (t - d).rem_euclid(2) != 0 {
            return None;
        }
        let (r, c) = ((t - d) / 2, (t + d) / 2);
        let n = self.n as isize;
        (0..n).contains(&r).then_some(())?;
        (0..n).contains(&c).then_some((r as usize, c as usize))
    }

    fn fits(&self) -> bool {
        let n = self.n as isize;
        let top = self.lanes as isize - 2 - self.offset;
        self.offset < n && top < n && self.letters.iter().all(|p| self.cell(p.lane, p.time).is_some())
    }

    fn entry_slot(&self, lane: usize) -> usize {
        let l = lane as isize;
        if l <= self.offset {
            cell_slot(self.n, (self.offset - l) as usize, 0, Dir::W)
        } else {
            cell_slot(self.n, 0, (l - 1 - self.offset) as usize, Dir::N)
        }
        .expect("entry lies on the boundary")
    }

    fn exit_slot(&self, lane: usize) -> usize {
        let (l, n) = (lane as isize, self.n as isize);
        if l <= self.offset {
            cell_slot(self.n, self.n - 1, (n - 1 + l - self.offset) as usize, Dir::S)
        } else {
            cell_slot(self.n, (n + self.offset - l) as usize, self.n - 1, Dir::E)
        }
        .expect("exit lies on the boundary")
    }

    /// Smallest time after `after` at which a generator on `lane` fits.
    fn next_time(&self, lane: usize, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |t| t + 1);
        (start..=2 * self.n).find(|&t| self.cell(lane, t).is_some())
    }

    fn render(&self) -> StagingMosaic {
        let n = self.n;
        let mut cells = vec![StagingCell::Tile(Tile::T0); n * n];
        for r in 0..n {
            for c in 0..n {
                let a = c as isize - r as isize + self.offset;
                let low = (0..self.lanes as isize).contains(&a);
                let high = (0..self.lanes as isize).contains(&(a + 1));
                cells[r * n + c] = StagingCell::Tile(match (low, high) {
                    (true, true) => Tile::T7,
                    (true, false) => Tile::T1,
                    (false, true) => Tile::T3,
                    (false, false) => Tile::T0,
                });
            }
        }
        for p in &self.letters {
            let (r, c) = self.cell(p.lane, p.time).expect("placed letters fit");
            cells[r * n + c] = match p.gen {
                Generator::Sigma(_) => StagingCell::Tile(Tile::T10),
                Generator::SigmaInv(_) => StagingCell::Tile(Tile::T9),
                Generator::Virtual(_) => StagingCell::Virtual,
            };
        }
        let grid = staging_grid(n, &cells);
        let pairs: Vec<(usize, usize)> =
            (0..self.lanes).map(|x| (self.exit_slot(x), self.entry_slot(self.closure[x]))).collect();
        let pairing = complete_pairing(&grid, &pairs).expect("closure pairs exits with entries");
        StagingMosaic { cells, pairing, band: self.clone() }
    }
}

fn staging_grid(n: usize, cells: &[StagingCell]) -> MosaicGrid {
    let tiles = cells
        .iter()
        .map(|c| match c {
            StagingCell::Tile(t) => *t,
            StagingCell::Virtual => Tile::T9,
        })
        .collect();
    MosaicGrid::new(n, tiles).expect("square cell list")
}

/// A braid drawn on the board whose cells may still hold virtual crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagingMosaic {
    cells: Vec<StagingCell>,
    pairing: BoundaryPairing,
    band: Band,
}

impl StagingMosaic {
    pub fn n(&self) -> usize {
        self.band.n
    }

    pub fn cell(&self, r: usize, c: usize) -> StagingCell {
        self.cells[r * self.n() + c]
    }

    pub fn rows(&self) -> Vec<Vec<StagingCell>> {
        self.cells.chunks(self.n()).map(|r| r.to_vec()).collect()
    }

    pub fn pairing(&self) -> &BoundaryPairing {
        &self.pairing
    }

    pub fn virtual_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == StagingCell::Virtual).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c, StagingCell::Tile(t) if t.is_crossing())).count()
    }

    /// Number of braid strands drawn, including lanes added during elimination.
    pub fn lanes(&self) -> usize {
        self.band.lanes
    }

    /// Gauss code of the drawn diagram. Virtual crossings carry no token.
    pub fn trace(&self) -> GaussCode {
        let virtual_cells: Vec<bool> = self.cells.iter().map(|c| *c == StagingCell::Virtual).collect();
        trace_parts(&staging_grid(self.n(), &self.cells), &self.pairing, &virtual_cells)
    }

    /// The virtual mosaic, once no virtual crossing remains.
    pub fn to_virtual_mosaic(&self) -> Option<VirtualMosaic> {
        if self.virtual_count() > 0 {
            return None;
        }
        let grid = staging_grid(self.n(), &self.cells);
        Some(VirtualMosaic::new(grid, self.pairing.clone()).expect("braid layouts are suitably connected"))
    }
}

/// Time of each letter when `count` letters are spread over the board.
fn spread(band: &Band, gens: &[(Generator, usize)]) -> Option<Vec<usize>> {
    let (lo, hi) = (2i64, 2 * band.n as i64 - 3);
    let steps = gens.len().saturating_sub(1).max(1) as i64;
    let mut times: Vec<usize> = Vec::with_capacity(gens.len());
    for (j, &(_, lane)) in gens.iter().enumerate() {
        // Target time lo + j (hi - lo) / steps, kept as a fraction over `steps`.
        let num = lo * steps + j as i64 * (hi - lo).max(0);
        let base = num.div_euclid(steps);
        let mut best: Option<usize> = None;
        for t in (base - 1).max(0)..=base + 2 {
            let t = t as usize;
            if band.cell(lane, t).is_none() {
                continue;
            }
            let dist = |t: usize| (t as i64 * steps - num).abs();
            if best.is_none_or(|b| dist(t) < dist(b)) {
                best = Some(t);
            }
        }
        let prev = times.last().copied();
        let t = match best {
            Some(t) if prev.is_none_or(|p| t > p) => t,
            _ => band.next_time(lane, prev)?,
        };
        times.push(t);
    }
    Some(times)
}

/// Draw the closed braid on the board. Generators are spread evenly along
/// the diagonal of an (L + 2)-board, enlarged when the lanes or the letters do
/// not fit. The closure pairs each exit with the entry of the same lane and
/// the remaining edges are paired with adjacent free edges.
pub fn layout(word: &BraidWord) -> StagingMosaic {
    let k = word.strands();
    let offset = k as isize / 2 - 1;
    let gens: Vec<(Generator, usize)> = word.letters().iter().map(|&g| (g, g.index() - 1)).collect();
    let mut n = (word.letters().len() + 2).max((offset.max(k as isize - 2 - offset) + 1) as usize);
    loop {
        let mut band = Band { n, lanes: k, offset, letters: Vec::new(), closure: (0..k).collect() };
        if let Some(times) = spread(&band, &gens) {
            band.letters = gens.iter().zip(times).map(|(&(gen, lane), time)| Placed { gen, lane, time }).collect();
            if band.fits() {
                return band.render();
            }
        }
        n += 1;
    }
}

/// Append a classical generator on `lane` after every placed letter, growing
/// the board until it fits.
fn append(band: &mut Band, gen: Generator, lane: usize) {
    while !band.fits() {
        band.n += 1;
    }
    loop {
        let last = band.letters.last().map(|p| p.time);
        if let Some(time) = band.next_time(lane, last) {
            band.letters.push(Placed { gen: gen.with_index(lane + 1), lane, time });
            return;
        }
        band.n += 1;
    }
}

/// One elimination step on the band: remove the front letter, which must
/// precede some virtual letter.
fn step(band: &Band) -> Band {
    let mut next = band.clone();
    let front = next.letters.remove(0);
    let a = front.lane;
    match front.gen {
        Generator::Virtual(_) => {
            for e in next.closure.iter_mut() {
                if *e == a {
                    *e = a + 1;
                } else if *e == a + 1 {
                    *e = a;
                }
            }
        }
        _ => {
            let x = next.closure.iter().position(|&e| e == a).expect("closure is a bijection");
            let y = next.closure.iter().position(|&e| e == a + 1).expect("closure is a bijection");
            if y == x + 1 {
                append(&mut next, front.gen, x);
            } else {
                let (p, q) = (next.lanes, next.lanes + 1);
                next.lanes += 2;
                next.closure[x] = p;
                next.closure[y] = q;
                next.closure.extend([a, a + 1]);
                append(&mut next, front.gen, p);
            }
        }
    }
    next
}

/// Letters in front of the last virtual letter, or `None` when no virtual
/// letter remains.
fn pending(band: &Band) -> Option<usize> {
    band.letters.iter().rposition(|p| p.gen.is_virtual())
}

/// Every intermediate staging mosaic of the elimination, starting with `vm`
/// and ending with one that holds no virtual crossing.
pub fn elimination_steps(vm: &StagingMosaic) -> Vec<StagingMosaic> {
    let mut out = vec![vm.clone()];
    let mut band = vm.band.clone();
    while let Some(before) = pending(&band) {
        band = step(&band);
        assert!(pending(&band).is_none_or(|after| after < before), "elimination makes progress");
        let next = band.render();
        debug_assert_eq!(
            canonical(&next.trace()),
            canonical(&out.last().expect("nonempty").trace()),
            "elimination step changed the Gauss code"
        );
        out.push(next);
    }
    out
}

/// Remove every virtual crossing from a staging mosaic produced by [`layout`].
pub fn eliminate_virtual(vm: &StagingMosaic) -> VirtualMosaic {
    let last = elimination_steps(vm).pop().expect("at least the input");
    last.to_virtual_mosaic().expect("no virtual crossings remain")
}

pub fn braid_to_mosaic(word: &BraidWord) -> VirtualMosaic {
    eliminate_virtual(&layout(word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        let w = BraidWord::parse(4, "s2^-1 s3 v2 s1^-1").unwrap();
        assert_eq!(
            w.letters(),
            &[Generator::SigmaInv(2), Generator::Sigma(3), Generator::Virtual(2), Generator::SigmaInv(1)]
        );
        assert_eq!(w.to_string(), "s2^-1 s3 v2 s1^-1");
        assert_eq!(BraidWord::parse(3, "").unwrap().letters(), &[]);
        assert_eq!(BraidWord::parse(2, "s2"), Err(BraidError::IndexOutOfRange { pos: 0, index: 2 }));
        assert_eq!(BraidWord::parse(2, "s0"), Err(BraidError::IndexOutOfRange { pos: 0, index: 0 }));
        assert!(matches!(BraidWord::parse(2, "s1 x1"), Err(BraidError::Syntax { pos: 1, .. })));
        assert!(matches!(BraidWord::parse(2, "s"), Err(BraidError::Syntax { pos: 0, .. })));
        assert_eq!(BraidWord::parse(0, ""), Err(BraidError::NoStrands));
    }

    #[test]
    fn single_strand_layouts_are_valid() {
        for k in 1..=6 {
            let vm = layout(&BraidWord::new(k, Vec::new()).unwrap());
            let code = vm.trace();
            assert_eq!(code.component_count(), k);
            assert_eq!(code.crossing_count(), 0);
            assert!(vm.to_virtual_mosaic().is_some());
        }
    }
}

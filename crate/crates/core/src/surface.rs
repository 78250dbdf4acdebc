//! Boundary pairings, orientable gluing, genus, and nesting.
//!
//! Edge `i` of the 4n-gon runs from corner `i` to corner `i + 1` in clockwise
//! order. A pair `(i, j)` is glued orientation-reversingly, so corner `i`
//! meets corner `j + 1` and corner `i + 1` meets corner `j`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tiles::{boundary_endpoint_profile, interior_suitably_connected, Dir, MosaicGrid, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    SlotOutOfRange(usize),
    SelfPaired(usize),
    SlotReused(usize),
    Unpaired(usize),
    OddUnlabeledCount,
    EndpointMismatch(usize, usize),
    SizeMismatch { grid: usize, pairing: usize },
    NotSuitablyConnected { row: usize, col: usize, dir: Dir },
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::SlotOutOfRange(s) => write!(f, "slot {s} out of range"),
            SurfaceError::SelfPaired(s) => write!(f, "slot {s} paired with itself"),
            SurfaceError::SlotReused(s) => write!(f, "slot {s} appears in more than one pair"),
            SurfaceError::Unpaired(s) => write!(f, "slot {s} is not paired"),
            SurfaceError::OddUnlabeledCount => write!(f, "odd number of unlabeled slots"),
            SurfaceError::EndpointMismatch(a, b) => {
                write!(f, "endpoint compatibility fails for pair {a}-{b}")
            }
            SurfaceError::SizeMismatch { grid, pairing } => {
                write!(f, "grid size {grid} differs from pairing size {pairing}")
            }
            SurfaceError::NotSuitablyConnected { row, col, dir } => {
                write!(f, "interior connectivity fails at row {row} col {col} edge {dir}")
            }
        }
    }
}

impl core::error::Error for SurfaceError {}

/// A perfect matching on the 4n boundary slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryPairing {
    n: usize,
    partner: Vec<usize>,
}

impl BoundaryPairing {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SurfaceError> {
        let m = 4 * n;
        let mut partner = vec![usize::MAX; m];
        for &(a, b) in pairs {
            for s in [a, b] {
                if s >= m {
                    return Err(SurfaceError::SlotOutOfRange(s));
                }
                if partner[s] != usize::MAX {
                    return Err(SurfaceError::SlotReused(s));
                }
            }
            if a == b {
                return Err(SurfaceError::SelfPaired(a));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(s) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(SurfaceError::Unpaired(s));
        }
        Ok(BoundaryPairing { n, partner })
    }

    /// Build from a partner array, trusting the caller that it is an involution.
    pub(crate) fn from_partner(n: usize, partner: Vec<usize>) -> Self {
        debug_assert!(partner.len() == 4 * n);
        debug_assert!(partner.iter().enumerate().all(|(i, &p)| p != i && partner[p] == i));
        BoundaryPairing { n, partner }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, s: usize) -> usize {
        self.partner[s]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&a| a < self.partner[a]).map(|a| (a, self.partner[a])).collect()
    }

    pub fn transform(&self, s: Sym) -> BoundaryPairing {
        let n = self.n;
        let mut partner = vec![0; 4 * n];
        for a in 0..4 * n {
            partner[s.slot(n, a)] = s.slot(n, self.partner[a]);
        }
        BoundaryPairing { n, partner }
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(k: usize) -> Self {
        Dsu((0..k).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Number of vertex classes of the glued polygon.
fn vertex_classes(partner: &[usize]) -> usize {
    let m = partner.len();
    let mut dsu = Dsu::new(m);
    let mut classes = m;
    for (i, &j) in partner.iter().enumerate() {
        if i < j {
            if dsu.union(i, (j + 1) % m) {
                classes -= 1;
            }
            if dsu.union((i + 1) % m, j) {
                classes -= 1;
            }
        }
    }
    classes
}

/// Genus of the closed surface obtained from the pairing.
pub fn genus(p: &BoundaryPairing) -> usize {
    let v = vertex_classes(&p.partner);
    let twice = 2 * p.n + 1 - v;
    debug_assert!(twice.is_multiple_of(2));
    twice / 2
}

/// True iff no two pairs interleave along the circular slot order.
pub fn is_nested(p: &BoundaryPairing) -> bool {
    let mut stack: Vec<usize> = Vec::new();
    for s in 0..p.partner.len() {
        let q = p.partner[s];
        if q > s {
            stack.push(s);
        } else if stack.pop() != Some(q) {
            return false;
        }
    }
    true
}

/// Boundary circles left after gluing the slots with `partner[s] != NONE`.
///
/// Each circle lists its free slots in boundary order. Gluing two consecutive
/// free slots of one circle keeps the genus, so every circle of even length
/// closes up without cost.
pub fn boundary_circles(partner: &[usize]) -> Vec<Vec<usize>> {
    let m = partner.len();
    let follow = |mut k: usize| {
        let mut guard = 0;
        while partner[k] != NONE {
            k = (partner[k] + 1) % m;
            guard += 1;
            debug_assert!(guard <= m);
        }
        k
    };
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for s in 0..m {
        if partner[s] != NONE || seen[s] {
            continue;
        }
        let mut circle = Vec::new();
        let mut e = s;
        while !seen[e] {
            seen[e] = true;
            circle.push(e);
            e = follow((e + 1) % m);
        }
        out.push(circle);
    }
    out
}

/// Marker for an unpaired slot in partial partner arrays.
pub const NONE: usize = usize::MAX;

/// Pair all free slots of a partial partner array so the genus is as small as
/// possible. Consecutive free slots of one boundary circle are folded together;
/// the single leftover of each odd circle is matched with the leftover of the
/// next odd circle.
pub fn min_genus_completion(partner: &mut [usize]) {
    let circles = boundary_circles(partner);
    let mut leftovers = Vec::new();
    for c in &circles {
        let mut k = 0;
        while k + 1 < c.len() {
            partner[c[k]] = c[k + 1];
            partner[c[k + 1]] = c[k];
            k += 2;
        }
        if c.len() % 2 == 1 {
            leftovers.push(c[c.len() - 1]);
        }
    }
    for w in leftovers.chunks(2) {
        partner[w[0]] = w[1];
        partner[w[1]] = w[0];
    }
}

/// Genus of a partial pairing after a genus-minimizing completion.
pub fn min_genus(n: usize, partial: &[usize]) -> usize {
    let mut p = partial.to_vec();
    min_genus_completion(&mut p);
    genus(&BoundaryPairing::from_partner(n, p))
}

/// Complete a partial labeling that covers all endpoint slots. Free slots are
/// paired with an adjacent free slot where possible and greedily otherwise.
pub fn complete_pairing(
    grid: &MosaicGrid,
    partial: &[(usize, usize)],
) -> Result<BoundaryPairing, SurfaceError> {
    let n = grid.n();
    let m = 4 * n;
    let profile = boundary_endpoint_profile(grid);
    let mut partner = vec![NONE; m];
    for &(a, b) in partial {
        for s in [a, b] {
            if s >= m {
                return Err(SurfaceError::SlotOutOfRange(s));
            }
            if partner[s] != NONE {
                return Err(SurfaceError::SlotReused(s));
            }
        }
        if a == b {
            return Err(SurfaceError::SelfPaired(a));
        }
        if profile[a] != profile[b] {
            return Err(SurfaceError::EndpointMismatch(a, b));
        }
        partner[a] = b;
        partner[b] = a;
    }
    if let Some(s) = (0..m).find(|&s| profile[s] && partner[s] == NONE) {
        return Err(SurfaceError::Unpaired(s));
    }
    let free: Vec<usize> = (0..m).filter(|&s| partner[s] == NONE).collect();
    assert!(free.len().is_multiple_of(2), "free slot count is even by parity");
    for s in 0..m {
        let t = (s + 1) % m;
        if partner[s] == NONE && partner[t] == NONE && s != t {
            partner[s] = t;
            partner[t] = s;
        }
    }
    let rest: Vec<usize> = (0..m).filter(|&s| partner[s] == NONE).collect();
    for w in rest.chunks(2) {
        partner[w[0]] = w[1];
        partner[w[1]] = w[0];
    }
    Ok(BoundaryPairing { n, partner })
}

/// A tile grid together with a boundary pairing satisfying endpoint
/// compatibility and interior suitable connectivity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VirtualMosaic {
    grid: MosaicGrid,
    pairing: BoundaryPairing,
}

impl VirtualMosaic {
    pub fn new(grid: MosaicGrid, pairing: BoundaryPairing) -> Result<Self, SurfaceError> {
        if grid.n() != pairing.n() {
            return Err(SurfaceError::SizeMismatch { grid: grid.n(), pairing: pairing.n() });
        }
        let rep = interior_suitably_connected(&grid);
        if let Some(&(row, col, dir)) = rep.violations.first() {
            return Err(SurfaceError::NotSuitablyConnected { row, col, dir });
        }
        let profile = boundary_endpoint_profile(&grid);
        for (a, b) in pairing.pairs() {
            if profile[a] != profile[b] {
                return Err(SurfaceError::EndpointMismatch(a, b));
            }
        }
        Ok(VirtualMosaic { grid, pairing })
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn grid(&self) -> &MosaicGrid {
        &self.grid
    }

    pub fn pairing(&self) -> &BoundaryPairing {
        &self.pairing
    }

    pub fn genus(&self) -> usize {
        genus(&self.pairing)
    }

    pub fn transform(&self, s: Sym) -> VirtualMosaic {
        VirtualMosaic { grid: self.grid.transform(s), pairing: self.pairing.transform(s) }
    }

    /// Exchange every T9 with T10.
    pub fn flip_crossings(&self) -> VirtualMosaic {
        VirtualMosaic { grid: self.grid.flip_crossings(), pairing: self.pairing.clone() }
    }
}

//! Naive enumeration of virtual n-mosaics: every tile assignment, every
//! matching of endpoint slots, every completion of the blank slots.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use vmosaic_core::invariants::fingerprint;
use vmosaic_core::surface::{complete_pairing, genus, BoundaryPairing, VirtualMosaic};
use vmosaic_core::trace::{canonical, trace};
use vmosaic_core::{CanonicalCode, Dir, Fingerprint, MosaicGrid, Tile};

pub fn all_grids(n: usize) -> Vec<MosaicGrid> {
    let total = 11usize.pow((n * n) as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let cells: Vec<Tile> = (0..n * n)
            .map(|_| {
                let t = Tile::from_index(code % 11).unwrap();
                code /= 11;
                t
            })
            .collect();
        let ok = (0..n).all(|r| {
            (0..n).all(|c| {
                let t = cells[r * n + c];
                (c + 1 == n || t.has(Dir::E) == cells[r * n + c + 1].has(Dir::W))
                    && (r + 1 == n || t.has(Dir::S) == cells[(r + 1) * n + c].has(Dir::N))
            })
        });
        if ok {
            out.push(MosaicGrid::new(n, cells).unwrap());
        }
    }
    out
}

/// Boundary slots in clockwise order from the north-west corner, each with
/// its cell and outward side.
pub fn slot_edge(n: usize, s: usize) -> (usize, usize, Dir) {
    let k = s % n;
    match s / n {
        0 => (0, k, Dir::N),
        1 => (k, n - 1, Dir::E),
        2 => (n - 1, n - 1 - k, Dir::S),
        _ => (n - 1 - k, 0, Dir::W),
    }
}

pub type Pairs = [(usize, usize)];

pub fn matchings(slots: &[usize], acc: &mut Vec<(usize, usize)>, visit: &mut dyn FnMut(&Pairs)) {
    let Some((&a, rest)) = slots.split_first() else {
        visit(acc);
        return;
    };
    for (k, &b) in rest.iter().enumerate() {
        let mut remaining = rest.to_vec();
        remaining.remove(k);
        acc.push((a, b));
        matchings(&remaining, acc, visit);
        acc.pop();
    }
}

#[derive(Default, Debug, PartialEq)]
pub struct Class {
    pub count: u64,
    pub genera: BTreeSet<usize>,
}

pub struct Naive {
    pub grids: Vec<MosaicGrid>,
    pub classes: BTreeMap<Fingerprint, Class>,
    pub mosaics: u64,
    /// Every mosaic with its endpoint matching's least genus, for reuse.
    pub samples: Vec<(VirtualMosaic, usize)>,
}

pub fn naive(n: usize) -> Naive {
    let grids = all_grids(n);
    let mut cache: HashMap<CanonicalCode, Fingerprint> = HashMap::new();
    let mut classes: BTreeMap<Fingerprint, Class> = BTreeMap::new();
    let mut samples = Vec::new();
    let mut mosaics = 0;
    for grid in &grids {
        let (ends, blanks): (Vec<usize>, Vec<usize>) = (0..4 * n).partition(|&s| {
            let (r, c, d) = slot_edge(n, s);
            grid.get(r, c).has(d)
        });
        matchings(&ends, &mut Vec::new(), &mut |pairs| {
            let mut least = usize::MAX;
            matchings(&blanks, &mut Vec::new(), &mut |extra| {
                let all: Vec<(usize, usize)> = pairs.iter().chain(extra).copied().collect();
                least = least.min(genus(&BoundaryPairing::new(n, &all).unwrap()));
            });
            let vm = VirtualMosaic::new(grid.clone(), complete_pairing(grid, pairs).unwrap()).unwrap();
            let code = trace(&vm);
            let tokens: usize = code.components.iter().map(Vec::len).sum();
            assert_eq!(tokens, 2 * grid.crossing_count());
            let fp = cache
                .entry(canonical(&code))
                .or_insert_with(|| fingerprint(&code, true).unwrap())
                .clone();
            let class = classes.entry(fp).or_default();
            class.count += 1;
            class.genera.insert(least);
            samples.push((vm, least));
            mosaics += 1;
        });
    }
    Naive { grids, classes, mosaics, samples }
}

//! Random host mosaics containing the left-hand side of a rule variant.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use vmosaic_core::moves::{RuleInstance, Variant};
use vmosaic_core::surface::BoundaryPairing;
use vmosaic_core::tiles::{boundary_endpoint_profile, cell_slot, Dir};
use vmosaic_core::{MosaicGrid, Tile, VirtualMosaic};

/// Fill the free cells of an m×m grid so that all interior edges match.
pub fn fill(m: usize, fixed: &[Option<Tile>], rng: &mut StdRng) -> Option<MosaicGrid> {
    fn rec(k: usize, m: usize, fixed: &[Option<Tile>], cells: &mut Vec<Tile>, rng: &mut StdRng, budget: &mut u32) -> bool {
        if k == m * m {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let (r, c) = (k / m, k % m);
        let fits = |t: Tile, cells: &[Tile]| {
            (c == 0 || cells[k - 1].has(Dir::E) == t.has(Dir::W)) && (r == 0 || cells[k - m].has(Dir::S) == t.has(Dir::N))
        };
        let mut options: Vec<Tile> = match fixed[k] {
            Some(t) => vec![t],
            None => Tile::ALL.to_vec(),
        };
        options.shuffle(rng);
        for t in options {
            if !fits(t, cells) {
                continue;
            }
            // Look ahead at fixed neighbours to the right and below.
            if c + 1 < m {
                if let Some(u) = fixed[k + 1] {
                    if u.has(Dir::W) != t.has(Dir::E) {
                        continue;
                    }
                }
            }
            if r + 1 < m {
                if let Some(u) = fixed[k + m] {
                    if u.has(Dir::N) != t.has(Dir::S) {
                        continue;
                    }
                }
            }
            cells.push(t);
            if rec(k + 1, m, fixed, cells, rng, budget) {
                return true;
            }
            cells.pop();
        }
        false
    }
    let mut cells = Vec::new();
    let mut budget = 100_000;
    rec(0, m, fixed, &mut cells, rng, &mut budget).then(|| MosaicGrid::new(m, cells).unwrap())
}

/// A random m-mosaic containing the left-hand side of `var`, or `None` when
/// the random choices fail.
pub fn host(inst: &RuleInstance, var: &Variant, m: usize, rng: &mut StdRng) -> Option<VirtualMosaic> {
    let mut fixed: Vec<Option<Tile>> = vec![None; m * m];
    let mut labeled: Vec<(char, usize)> = Vec::new();
    for (pi, p) in inst.pieces.iter().enumerate() {
        if p.height > m || p.width > m {
            return None;
        }
        let mut spots = Vec::new();
        for r in 0..=m - p.height {
            for c in 0..=m - p.width {
                let free = (0..p.height).all(|i| (0..p.width).all(|j| fixed[(r + i) * m + c + j].is_none()));
                let on_edge = p.labels.iter().all(|l| cell_slot(m, r + l.row, c + l.col, l.dir).is_some());
                if free && on_edge {
                    spots.push((r, c));
                }
            }
        }
        let &(r0, c0) = spots.choose(rng)?;
        for i in 0..p.height {
            for j in 0..p.width {
                fixed[(r0 + i) * m + c0 + j] = Some(var.before[pi][i * p.width + j]);
            }
        }
        for l in &p.labels {
            labeled.push((l.before, cell_slot(m, r0 + l.row, c0 + l.col, l.dir).unwrap()));
        }
    }
    let grid = fill(m, &fixed, rng)?;
    let ends = boundary_endpoint_profile(&grid);
    let mut partner = vec![usize::MAX; 4 * m];
    let slots: Vec<usize> = labeled.iter().map(|l| l.1).collect();
    for &(ch, s) in &labeled {
        if partner[s] != usize::MAX {
            continue;
        }
        let t = match labeled.iter().find(|l| l.0 == ch && l.1 != s) {
            Some(l) => l.1,
            None => {
                let options: Vec<usize> = (0..4 * m)
                    .filter(|&q| partner[q] == usize::MAX && q != s && !slots.contains(&q) && ends[q] == ends[s])
                    .collect();
                *options.choose(rng)?
            }
        };
        if ends[s] != ends[t] {
            return None;
        }
        partner[s] = t;
        partner[t] = s;
    }
    for status in [true, false] {
        let mut rest: Vec<usize> = (0..4 * m).filter(|&q| partner[q] == usize::MAX && ends[q] == status).collect();
        rest.shuffle(rng);
        if rest.len() % 2 == 1 {
            return None;
        }
        for w in rest.chunks(2) {
            partner[w[0]] = w[1];
            partner[w[1]] = w[0];
        }
    }
    let pairs: Vec<(usize, usize)> = (0..4 * m).filter(|&a| a < partner[a]).map(|a| (a, partner[a])).collect();
    VirtualMosaic::new(grid, BoundaryPairing::new(m, &pairs).ok()?).ok()
}

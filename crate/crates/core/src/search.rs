//! Exhaustive enumeration of virtual n-mosaics and virtual mosaic numbers.
//!
//! Grids are built row by row: every row is internally consistent and its
//! north profile equals the south profile of the row above. A sweep is split
//! into shards by the choice of the first row; each shard is independent and
//! shard results merge by map union.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::invariants::{cable_applies, fingerprint, Fingerprint, InvariantError};
use crate::surface::{genus, min_genus_completion, BoundaryPairing, VirtualMosaic, NONE};
use crate::tiles::{boundary_endpoint_profile, Dir, MosaicGrid, Sym, Tile};
use crate::trace::{canonical, trace, CanonicalCode, GaussCode};

/// Largest n accepted by a sweep.
pub const MAX_SWEEP_N: usize = 4;
/// Default node budget: the number of (grid, pairing) pairs a sweep may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n: usize,
    pub max_crossing_tiles: Option<usize>,
    /// Allowed genera; `None` accepts every genus.
    pub genus: Option<BTreeSet<usize>>,
    /// Required component count; `None` accepts any.
    pub components: Option<usize>,
    /// Skip grids with an interior R1 or R2 reduction site.
    pub require_no_trivial_reductions: bool,
    /// Visit one grid per dihedral orbit.
    pub symmetry_reduction: bool,
    pub workers: usize,
    /// Compute 2-cable polynomials for small knots.
    pub with_cable: bool,
    pub budget: u128,
}

impl SweepConfig {
    pub fn new(n: usize) -> Self {
        SweepConfig {
            n,
            max_crossing_tiles: None,
            genus: None,
            components: None,
            require_no_trivial_reductions: false,
            symmetry_reduction: false,
            workers: 1,
            with_cable: true,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn genus_only(mut self, g: usize) -> Self {
        self.genus = Some([g].into_iter().collect());
        self
    }

    fn genus_ok(&self, g: usize) -> bool {
        self.genus.as_ref().is_none_or(|s| s.contains(&g))
    }

    fn planar_only(&self) -> bool {
        self.genus.as_ref().is_some_and(|s| s.len() == 1 && s.contains(&0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    TooLarge { n: usize, max: usize },
    StateSpaceTooLarge { estimated: u128, budget: u128 },
    Invariant(InvariantError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::TooLarge { n, max } => write!(f, "sweep size {n} exceeds the maximum {max}"),
            SearchError::StateSpaceTooLarge { estimated, budget } => {
                write!(f, "estimated {estimated} mosaics exceed the budget of {budget}")
            }
            SearchError::Invariant(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<InvariantError> for SearchError {
    fn from(e: InvariantError) -> Self {
        SearchError::Invariant(e)
    }
}

/// What a sweep knows about one fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    /// Smallest mosaic of minimal genus, then fewest crossing tiles.
    pub witness: VirtualMosaic,
    pub min_genus: usize,
    pub crossing_tiles: usize,
    pub count: u64,
    pub genera: BTreeSet<usize>,
    pub code: CanonicalCode,
}

impl SweepEntry {
    fn key(&self) -> (usize, usize, &VirtualMosaic) {
        (self.min_genus, self.crossing_tiles, &self.witness)
    }

    fn absorb(&mut self, other: SweepEntry) {
        self.count += other.count;
        self.genera.extend(other.genera.iter().copied());
        if other.key() < self.key() {
            self.witness = other.witness;
            self.min_genus = other.min_genus;
            self.crossing_tiles = other.crossing_tiles;
            self.code = other.code;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepResult {
    pub entries: BTreeMap<Fingerprint, SweepEntry>,
    /// Accepted mosaics per crossing-tile count.
    pub totals: BTreeMap<usize, u64>,
    pub grids: u64,
    pub mosaics: u64,
}

impl SweepResult {
    /// Order-independent union of two results.
    pub fn merge(&mut self, other: SweepResult) {
        for (fp, e) in other.entries {
            match self.entries.get_mut(&fp) {
                Some(mine) => mine.absorb(e),
                None => {
                    self.entries.insert(fp, e);
                }
            }
        }
        for (k, v) in other.totals {
            *self.totals.entry(k).or_default() += v;
        }
        self.grids += other.grids;
        self.mosaics += other.mosaics;
    }
}

/// A row of tiles that is consistent along its interior vertical edges.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    tiles: Vec<Tile>,
    north: u32,
    south: u32,
    /// Endpoints on the west and east boundary.
    sides: u32,
    crossings: usize,
}

fn profile(tiles: &[Tile], d: Dir) -> u32 {
    tiles.iter().enumerate().filter(|(_, t)| t.has(d)).fold(0, |m, (k, _)| m | 1 << k)
}

fn rows(n: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let mut cur: Vec<Tile> = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<Tile>, out: &mut Vec<Row>) {
        if cur.len() == n {
            out.push(Row {
                tiles: cur.clone(),
                north: profile(cur, Dir::N),
                south: profile(cur, Dir::S),
                sides: cur[0].has(Dir::W) as u32 + cur[n - 1].has(Dir::E) as u32,
                crossings: cur.iter().filter(|t| t.is_crossing()).count(),
            });
            return;
        }
        for t in Tile::ALL {
            if let Some(&prev) = cur.last() {
                if prev.has(Dir::E) != t.has(Dir::W) {
                    continue;
                }
            }
            cur.push(t);
            rec(n, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

struct RowTable {
    n: usize,
    rows: Vec<Row>,
    by_north: Vec<Vec<usize>>,
}

impl RowTable {
    fn new(n: usize) -> Self {
        let rows = rows(n);
        let mut by_north = vec![Vec::new(); 1 << n];
        for (k, r) in rows.iter().enumerate() {
            by_north[r.north as usize].push(k);
        }
        RowTable { n, rows, by_north }
    }
}

fn is_orbit_representative(grid: &MosaicGrid) -> bool {
    Sym::ALL[1..].iter().all(|&s| grid.cells() <= grid.transform(s).cells())
}

/// Number of shards of a sweep of n-mosaics.
pub fn shard_count(n: usize) -> usize {
    rows(n).len()
}

fn grids_in_shard(
    table: &RowTable,
    config: &SweepConfig,
    shard: usize,
    visitor: &mut dyn FnMut(&MosaicGrid) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = table.n;
    let cap = config.max_crossing_tiles.unwrap_or(usize::MAX);
    let first = &table.rows[shard];
    if first.crossings > cap {
        return ControlFlow::Continue(());
    }
    let mut chosen = vec![shard];
    let reducer = config
        .require_no_trivial_reductions
        .then(|| crate::moves::ReductionIndex::new(&crate::moves::compile_rules()));
    #[allow(clippy::too_many_arguments)]
    fn rec(
        table: &RowTable,
        config: &SweepConfig,
        reducer: Option<&crate::moves::ReductionIndex>,
        cap: usize,
        chosen: &mut Vec<usize>,
        crossings: usize,
        visitor: &mut dyn FnMut(&MosaicGrid) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = table.n;
        if chosen.len() == n {
            let cells: Vec<Tile> = chosen.iter().flat_map(|&k| table.rows[k].tiles.iter().copied()).collect();
            let grid = MosaicGrid::new(n, cells).expect("n rows of n tiles");
            if config.symmetry_reduction && !is_orbit_representative(&grid) {
                return ControlFlow::Continue(());
            }
            if reducer.is_some_and(|r| r.admits(&grid)) {
                return ControlFlow::Continue(());
            }
            return visitor(&grid);
        }
        let south = table.rows[*chosen.last().unwrap()].south;
        for &k in &table.by_north[south as usize] {
            let c = crossings + table.rows[k].crossings;
            if c > cap {
                continue;
            }
            chosen.push(k);
            rec(table, config, reducer, cap, chosen, c, visitor)?;
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
    debug_assert!(n >= 1);
    rec(table, config, reducer.as_ref(), cap, &mut chosen, first.crossings, visitor)
}

/// Visit every interior-suitably-connected n-grid meeting the tile filters,
/// in a fixed order.
pub fn enumerate_grids(
    n: usize,
    config: &SweepConfig,
    visitor: &mut dyn FnMut(&MosaicGrid) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let table = RowTable::new(n);
    for shard in 0..table.rows.len() {
        grids_in_shard(&table, config, shard, visitor)?;
    }
    ControlFlow::Continue(())
}

/// Visit every perfect matching of `slots` (in increasing order), writing it
/// into `partner`.
fn all_matchings(
    slots: &[usize],
    partner: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let Some((&a, rest)) = slots.split_first() else {
        return visit(partner);
    };
    for k in 0..rest.len() {
        let b = rest[k];
        let remaining: Vec<usize> = rest.iter().copied().filter(|&x| x != b).collect();
        partner[a] = b;
        partner[b] = a;
        all_matchings(&remaining, partner, visit)?;
        partner[a] = NONE;
        partner[b] = NONE;
    }
    ControlFlow::Continue(())
}

/// Visit every non-crossing perfect matching of `slots` taken in cyclic order.
fn noncrossing_matchings(
    segments: &mut Vec<Vec<usize>>,
    partner: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let Some(seg) = segments.pop() else {
        return visit(partner);
    };
    if seg.is_empty() {
        let r = noncrossing_matchings(segments, partner, visit);
        segments.push(seg);
        return r;
    }
    let a = seg[0];
    let mut k = 1;
    while k < seg.len() {
        let b = seg[k];
        partner[a] = b;
        partner[b] = a;
        let before = segments.len();
        segments.push(seg[k + 1..].to_vec());
        segments.push(seg[1..k].to_vec());
        let r = noncrossing_matchings(segments, partner, visit);
        segments.truncate(before);
        partner[a] = NONE;
        partner[b] = NONE;
        r?;
        k += 2;
    }
    segments.push(seg);
    ControlFlow::Continue(())
}

/// Visit every endpoint-compatible pairing of the grid's boundary that passes
/// the genus filter. Endpoint slots are matched in all possible ways; blank
/// slots are paired by the genus-minimizing completion, so they never change
/// the traced code and never raise the genus above the least achievable.
pub fn enumerate_pairings(
    grid: &MosaicGrid,
    config: &SweepConfig,
    visitor: &mut dyn FnMut(&BoundaryPairing, usize) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = grid.n();
    let profile = boundary_endpoint_profile(grid);
    let ends: Vec<usize> = (0..4 * n).filter(|&s| profile[s]).collect();
    let mut partner = vec![NONE; 4 * n];
    let mut visit = |p: &[usize]| {
        let mut full = p.to_vec();
        min_genus_completion(&mut full);
        let bp = BoundaryPairing::from_partner(n, full);
        let g = genus(&bp);
        if config.genus_ok(g) {
            visitor(&bp, g)
        } else {
            ControlFlow::Continue(())
        }
    };
    if config.planar_only() {
        noncrossing_matchings(&mut vec![ends], &mut partner, &mut visit)
    } else {
        all_matchings(&ends, &mut partner, &mut visit)
    }
}

fn double_factorial_odd(k: u128) -> u128 {
    // (2k - 1)!!
    (1..=k).map(|i| 2 * i - 1).product()
}

fn catalan(k: u128) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Number of (grid, endpoint matching) pairs the sweep would visit, before
/// genus and component filters other than the planar shortcut.
pub fn estimate_nodes(config: &SweepConfig) -> u128 {
    let n = config.n;
    let table = RowTable::new(n);
    let cap = config.max_crossing_tiles.unwrap_or(n * n).min(n * n);
    let ends_max = 4 * n;
    // state: (south profile, boundary endpoints so far, crossings) -> count
    let idx = |p: u32, e: usize, c: usize| ((p as usize * (ends_max + 1)) + e) * (cap + 1) + c;
    let size = (1usize << n) * (ends_max + 1) * (cap + 1);
    let mut cur = vec![0u128; size];
    for r in &table.rows {
        if r.crossings <= cap {
            let e = r.north.count_ones() as usize + r.sides as usize;
            cur[idx(r.south, e, r.crossings)] += 1;
        }
    }
    for _ in 1..n {
        let mut next = vec![0u128; size];
        for p in 0..(1u32 << n) {
            for e in 0..=ends_max {
                for c in 0..=cap {
                    let v = cur[idx(p, e, c)];
                    if v == 0 {
                        continue;
                    }
                    for &k in &table.by_north[p as usize] {
                        let r = &table.rows[k];
                        let c2 = c + r.crossings;
                        if c2 > cap {
                            continue;
                        }
                        next[idx(r.south, e + r.sides as usize, c2)] += v;
                    }
                }
            }
        }
        cur = next;
    }
    let planar = config.planar_only();
    let mut total = 0u128;
    for p in 0..(1u32 << n) {
        for e in 0..=ends_max {
            for c in 0..=cap {
                let v = cur[idx(p, e, c)];
                if v == 0 {
                    continue;
                }
                let e = e + p.count_ones() as usize;
                let k = (e / 2) as u128;
                total += v * if planar { catalan(k) } else { double_factorial_odd(k) };
            }
        }
    }
    total
}

fn check_budget(config: &SweepConfig) -> Result<(), SearchError> {
    if config.n > MAX_SWEEP_N {
        return Err(SearchError::TooLarge { n: config.n, max: MAX_SWEEP_N });
    }
    let estimated = estimate_nodes(config);
    if estimated > config.budget {
        return Err(SearchError::StateSpaceTooLarge { estimated, budget: config.budget });
    }
    Ok(())
}

/// Fingerprints of traced codes, cached by canonical code.
#[derive(Default)]
pub struct FingerprintCache {
    map: BTreeMap<CanonicalCode, Fingerprint>,
}

impl FingerprintCache {
    pub fn get(&mut self, code: &GaussCode, with_cable: bool) -> Result<(CanonicalCode, Fingerprint), InvariantError> {
        let key = canonical(code);
        if let Some(fp) = self.map.get(&key) {
            return Ok((key, fp.clone()));
        }
        let fp = fingerprint(code, with_cable)?;
        self.map.insert(key.clone(), fp.clone());
        Ok((key, fp))
    }
}

/// Visit every accepted mosaic of one shard with its traced code and genus.
fn mosaics_in_shard(
    table: &RowTable,
    config: &SweepConfig,
    shard: usize,
    grids: &mut u64,
    visitor: &mut dyn FnMut(VirtualMosaic, GaussCode, usize) -> ControlFlow<()>,
) -> ControlFlow<()> {
    grids_in_shard(table, config, shard, &mut |grid| {
        *grids += 1;
        enumerate_pairings(grid, config, &mut |p, g| {
            let vm = VirtualMosaic::new(grid.clone(), p.clone()).expect("enumerated mosaics are valid");
            let code = trace(&vm);
            if config.components.is_some_and(|k| k != code.component_count()) {
                return ControlFlow::Continue(());
            }
            visitor(vm, code, g)
        })
    })
}

/// Sweep one shard.
pub fn sweep_shard(config: &SweepConfig, shard: usize) -> Result<SweepResult, SearchError> {
    let table = RowTable::new(config.n);
    sweep_shard_with(&table, config, shard)
}

fn sweep_shard_with(table: &RowTable, config: &SweepConfig, shard: usize) -> Result<SweepResult, SearchError> {
    let mut result = SweepResult::default();
    let mut cache = FingerprintCache::default();
    let mut error = None;
    let mut grids = 0;
    let _ = mosaics_in_shard(table, config, shard, &mut grids, &mut |vm, code, g| {
        let (key, fp) = match cache.get(&code, config.with_cable) {
            Ok(x) => x,
            Err(e) => {
                error = Some(e);
                return ControlFlow::Break(());
            }
        };
        let ct = vm.grid().crossing_count();
        result.mosaics += 1;
        *result.totals.entry(ct).or_default() += 1;
        let entry = SweepEntry {
            witness: vm,
            min_genus: g,
            crossing_tiles: ct,
            count: 1,
            genera: [g].into_iter().collect(),
            code: key,
        };
        match result.entries.get_mut(&fp) {
            Some(e) => e.absorb(entry),
            None => {
                result.entries.insert(fp, entry);
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = error {
        return Err(e.into());
    }
    result.grids = grids;
    Ok(result)
}

/// Check the configuration against the size guard and node budget.
pub fn admit(config: &SweepConfig) -> Result<(), SearchError> {
    check_budget(config)
}

/// Sequential sweep over all shards.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult, SearchError> {
    check_budget(config)?;
    let table = RowTable::new(config.n);
    let mut result = SweepResult::default();
    for shard in 0..table.rows.len() {
        result.merge(sweep_shard_with(&table, config, shard)?);
    }
    Ok(result)
}

/// Outcome of a virtual mosaic number search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VmnOutcome {
    Found { n: usize, witness: VirtualMosaic, genus: usize },
    /// No witness up to `n_max`. `pruned` lists the sizes that were searched
    /// only partially because of the budget, so the answer is not a proof.
    NotFoundUpTo { n_max: usize, pruned: Vec<usize> },
}

/// Whether a traced code matches a target fingerprint, computing the cable
/// polynomial only when the plain polynomial already agrees.
fn code_matches(code: &GaussCode, target: &Fingerprint) -> Result<bool, InvariantError> {
    if code.component_count() != target.components {
        return Ok(false);
    }
    let plain = fingerprint(code, false)?;
    if plain.f != target.f {
        return Ok(false);
    }
    if target.f2.is_none() || !cable_applies(code) {
        return Ok(true);
    }
    Ok(fingerprint(code, true)?.matches(target))
}

/// Least n in `1..=n_max` with a mosaic of the target fingerprint. A size whose
/// full sweep exceeds the budget is searched over planar (genus 0) pairings
/// only, if that fits, and is reported as pruned.
pub fn vmn(target: &Fingerprint, n_max: usize, budget: u128) -> Result<VmnOutcome, SearchError> {
    let mut pruned = Vec::new();
    for n in 1..=n_max {
        let mut config = SweepConfig::new(n);
        config.budget = budget;
        config.components = Some(target.components);
        if check_budget(&config).is_err() {
            config = config.genus_only(0);
            if let Err(e) = check_budget(&config) {
                if n > MAX_SWEEP_N {
                    return Err(e);
                }
                pruned.push(n);
                continue;
            }
            pruned.push(n);
        }
        let table = RowTable::new(n);
        let mut seen: BTreeMap<CanonicalCode, bool> = BTreeMap::new();
        let mut best: Option<(usize, VirtualMosaic)> = None;
        let mut error = None;
        for shard in 0..table.rows.len() {
            let mut grids = 0;
            let _ = mosaics_in_shard(&table, &config, shard, &mut grids, &mut |vm, code, g| {
                let key = canonical(&code);
                let hit = match seen.get(&key) {
                    Some(&h) => h,
                    None => match code_matches(&code, target) {
                        Ok(h) => {
                            seen.insert(key, h);
                            h
                        }
                        Err(e) => {
                            error = Some(e);
                            return ControlFlow::Break(());
                        }
                    },
                };
                if hit && best.as_ref().is_none_or(|(bg, bw)| (g, &vm) < (*bg, bw)) {
                    best = Some((g, vm));
                }
                ControlFlow::Continue(())
            });
            if let Some(e) = error {
                return Err(e.into());
            }
        }
        if let Some((genus, witness)) = best {
            return Ok(VmnOutcome::Found { n, witness, genus });
        }
    }
    Ok(VmnOutcome::NotFoundUpTo { n_max, pruned })
}

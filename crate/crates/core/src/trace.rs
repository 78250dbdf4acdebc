//! Strand tracing, signed Gauss codes, and their canonical form.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::surface::{BoundaryPairing, VirtualMosaic};
use crate::tiles::{boundary_endpoint_profile, cell_slot, slot_cell, Dir, MosaicGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Passage {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

/// One passage through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub id: u32,
    pub passage: Passage,
    pub sign: i8,
}

impl Token {
    pub fn new(id: u32, passage: Passage, sign: i8) -> Self {
        Token { id, passage, sign }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeError {
    Syntax { pos: usize },
    Occurrences(u32),
    PassageMismatch(u32),
    SignMismatch(u32),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::Syntax { pos } => write!(f, "Gauss code syntax error at byte {pos}"),
            CodeError::Occurrences(id) => write!(f, "crossing {id} must occur exactly twice"),
            CodeError::PassageMismatch(id) => {
                write!(f, "crossing {id} needs one over and one under passage")
            }
            CodeError::SignMismatch(id) => write!(f, "crossing {id} has inconsistent signs"),
        }
    }
}

impl core::error::Error for CodeError {}

/// Signed Gauss code: one token sequence per component with crossings, plus a
/// count of crossingless components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussCode {
    pub components: Vec<Vec<Token>>,
    pub free_loops: usize,
}

impl GaussCode {
    pub fn new(components: Vec<Vec<Token>>, free_loops: usize) -> Result<Self, CodeError> {
        let mut comps = Vec::new();
        let mut free = free_loops;
        for c in components {
            if c.is_empty() {
                free += 1;
            } else {
                comps.push(c);
            }
        }
        let code = GaussCode { components: comps, free_loops: free };
        code.validate()?;
        Ok(code)
    }

    pub fn unknot() -> Self {
        GaussCode { components: Vec::new(), free_loops: 1 }
    }

    pub fn unlink(k: usize) -> Self {
        GaussCode { components: Vec::new(), free_loops: k }
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        let mut seen: BTreeMap<u32, (usize, Option<Token>)> = BTreeMap::new();
        for t in self.components.iter().flatten() {
            let e = seen.entry(t.id).or_insert((0, None));
            e.0 += 1;
            if e.0 > 2 {
                return Err(CodeError::Occurrences(t.id));
            }
            if let Some(prev) = e.1 {
                if prev.passage == t.passage {
                    return Err(CodeError::PassageMismatch(t.id));
                }
                if prev.sign != t.sign {
                    return Err(CodeError::SignMismatch(t.id));
                }
            }
            e.1 = Some(*t);
        }
        if let Some((&id, _)) = seen.iter().find(|(_, v)| v.0 != 2) {
            return Err(CodeError::Occurrences(id));
        }
        Ok(())
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum::<usize>() / 2
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        let twice: i64 = self.components.iter().flatten().map(|t| t.sign as i64).sum();
        twice / 2
    }

    /// Crossing ids in order of first appearance.
    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = Vec::new();
        for t in self.components.iter().flatten() {
            if !ids.contains(&t.id) {
                ids.push(t.id);
            }
        }
        ids
    }

    /// Reverse the orientation of the components selected by `mask`. A crossing
    /// changes sign when exactly one of its two strands is reversed.
    pub fn reorient(&self, mask: &[bool]) -> GaussCode {
        let mut flips: BTreeMap<u32, u8> = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            if mask.get(i).copied().unwrap_or(false) {
                for t in c {
                    *flips.entry(t.id).or_insert(0) += 1;
                }
            }
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut c: Vec<Token> = c
                    .iter()
                    .map(|t| {
                        let odd = flips.get(&t.id).copied().unwrap_or(0) % 2 == 1;
                        Token { sign: if odd { -t.sign } else { t.sign }, ..*t }
                    })
                    .collect();
                if mask.get(i).copied().unwrap_or(false) {
                    c.reverse();
                }
                c
            })
            .collect();
        GaussCode { components, free_loops: self.free_loops }
    }

    /// Parse the text form, e.g. `O1+U2+U1+O2+|0`. The empty string is the
    /// empty link and each `0` component is a crossingless loop.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(GaussCode::default());
        }
        let mut components = Vec::new();
        let mut free = 0;
        let mut offset = 0;
        for part in text.split('|') {
            let start = offset;
            offset += part.len() + 1;
            let part_t = part.trim();
            if part_t == "0" {
                free += 1;
                continue;
            }
            let b = part_t.as_bytes();
            let lead = part.len() - part.trim_start().len();
            let mut i = 0;
            let mut comp = Vec::new();
            while i < b.len() {
                let pos = start + lead + i;
                let passage = match b[i] {
                    b'O' | b'o' => Passage::Over,
                    b'U' | b'u' => Passage::Under,
                    _ => return Err(CodeError::Syntax { pos }),
                };
                i += 1;
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(CodeError::Syntax { pos: start + lead + i });
                }
                let id: u32 = part_t[ds..i].parse().map_err(|_| CodeError::Syntax { pos })?;
                let sign = match b.get(i) {
                    Some(b'+') => 1,
                    Some(b'-') => -1,
                    _ => return Err(CodeError::Syntax { pos: start + lead + i }),
                };
                i += 1;
                comp.push(Token { id, passage, sign });
            }
            if comp.is_empty() {
                return Err(CodeError::Syntax { pos: start });
            }
            components.push(comp);
        }
        GaussCode::new(components, free)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.components {
            if !first {
                f.write_char('|')?;
            }
            first = false;
            for t in c {
                let p = if t.passage == Passage::Over { 'O' } else { 'U' };
                let s = if t.sign > 0 { '+' } else { '-' };
                write!(f, "{p}{}{s}", t.id)?;
            }
        }
        for _ in 0..self.free_loops {
            if !first {
                f.write_char('|')?;
            }
            first = false;
            f.write_char('0')?;
        }
        Ok(())
    }
}

/// Swap over and under at every crossing and negate every sign.
pub fn mirror(code: &GaussCode) -> GaussCode {
    GaussCode {
        components: code
            .components
            .iter()
            .map(|c| {
                c.iter().map(|t| Token { id: t.id, passage: t.passage.flip(), sign: -t.sign }).collect()
            })
            .collect(),
        free_loops: code.free_loops,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceError {
    InvalidMosaic,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::InvalidMosaic => write!(f, "mosaic violates its invariants"),
        }
    }
}

impl core::error::Error for TraceError {}

struct Pass {
    over: bool,
    dir: (i32, i32),
}

/// Walk every strand of the mosaic and record the crossings it meets.
pub fn trace(vm: &VirtualMosaic) -> GaussCode {
    trace_parts(vm.grid(), vm.pairing(), &[])
}

/// Trace a grid under a pairing. Crossing cells flagged in `virtual_cells`
/// are passed straight through without recording a token.
pub(crate) fn trace_parts(grid: &MosaicGrid, pairing: &BoundaryPairing, virtual_cells: &[bool]) -> GaussCode {
    let n = grid.n();
    let mut visited = vec![[false; 2]; n * n];
    let mut components: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut passes: BTreeMap<usize, Vec<Pass>> = BTreeMap::new();
    let profile = boundary_endpoint_profile(grid);

    let mut starts: Vec<(usize, usize, Dir)> = Vec::new();
    for (s, &has) in profile.iter().enumerate() {
        if has {
            starts.push(slot_cell(n, s));
        }
    }
    for r in 0..n {
        for c in 0..n {
            for &(a, _) in grid.get(r, c).connections().arcs {
                starts.push((r, c, a));
            }
        }
    }

    for (r0, c0, d0) in starts {
        let t0 = grid.get(r0, c0);
        let arc0 = t0.arc_at(d0).expect("start edge has an arc");
        if visited[r0 * n + c0][arc0] {
            continue;
        }
        let mut seq: Vec<(usize, bool)> = Vec::new();
        let (mut r, mut c, mut d) = (r0, c0, d0);
        loop {
            let t = grid.get(r, c);
            let arc = t.arc_at(d).expect("strand enters through a connection point");
            let cell = r * n + c;
            if visited[cell][arc] {
                break;
            }
            visited[cell][arc] = true;
            let exit = t.exit(d).expect("arc has two ends");
            if t.is_crossing() && !virtual_cells.get(cell).copied().unwrap_or(false) {
                let over = t.is_over_at(d);
                passes.entry(cell).or_default().push(Pass { over, dir: exit.vector() });
                seq.push((cell, over));
            }
            match cell_slot(n, r, c, exit) {
                Some(slot) => {
                    let (r2, c2, d2) = slot_cell(n, pairing.partner(slot));
                    r = r2;
                    c = c2;
                    d = d2;
                }
                None => {
                    let (dr, dc) = exit.offset();
                    r = (r as isize + dr) as usize;
                    c = (c as isize + dc) as usize;
                    d = exit.opposite();
                }
            }
        }
        components.push(seq);
    }

    let mut sign_of: BTreeMap<usize, i8> = BTreeMap::new();
    for (&cell, ps) in &passes {
        debug_assert_eq!(ps.len(), 2);
        let (o, u) = if ps[0].over { (&ps[0], &ps[1]) } else { (&ps[1], &ps[0]) };
        let cross = o.dir.0 * u.dir.1 - o.dir.1 * u.dir.0;
        sign_of.insert(cell, if cross > 0 { 1 } else { -1 });
    }
    let mut ids: BTreeMap<usize, u32> = BTreeMap::new();
    let mut out = Vec::new();
    let mut free = 0;
    for seq in components {
        if seq.is_empty() {
            free += 1;
            continue;
        }
        let comp = seq
            .iter()
            .map(|&(cell, over)| {
                let next = ids.len() as u32 + 1;
                let id = *ids.entry(cell).or_insert(next);
                Token {
                    id,
                    passage: if over { Passage::Over } else { Passage::Under },
                    sign: sign_of[&cell],
                }
            })
            .collect();
        out.push(comp);
    }
    GaussCode { components: out, free_loops: free }
}

/// Canonical serialization of a Gauss code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub String);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn encode(t: &Token, map: &mut BTreeMap<u32, u32>) -> u32 {
    let next = map.len() as u32 + 1;
    let id = *map.entry(t.id).or_insert(next);
    (id << 2) | ((t.passage == Passage::Under) as u32) << 1 | (t.sign < 0) as u32
}

fn encode_rotated(c: &[Token], rot: usize, map: &mut BTreeMap<u32, u32>) -> Vec<u32> {
    (0..c.len()).map(|k| encode(&c[(rot + k) % c.len()], map)).collect()
}

/// Lexicographically smallest ordering of the remaining components, branching
/// only on ties of the leading component.
fn best_suffix(comps: &[Vec<Token>], left: &[usize], map: &BTreeMap<u32, u32>) -> Vec<Vec<u32>> {
    if left.is_empty() {
        return Vec::new();
    }
    let mut best_head: Option<Vec<u32>> = None;
    let mut tied: Vec<(usize, BTreeMap<u32, u32>)> = Vec::new();
    for (li, &ci) in left.iter().enumerate() {
        let c = &comps[ci];
        for rot in 0..c.len() {
            let mut m = map.clone();
            let enc = encode_rotated(c, rot, &mut m);
            match &best_head {
                Some(b) if enc > *b => {}
                Some(b) if enc == *b => tied.push((li, m)),
                _ => {
                    best_head = Some(enc);
                    tied.clear();
                    tied.push((li, m));
                }
            }
        }
    }
    let head = best_head.expect("nonempty component");
    let mut best: Option<Vec<Vec<u32>>> = None;
    for (li, m) in tied {
        let rest: Vec<usize> = left.iter().enumerate().filter(|&(k, _)| k != li).map(|(_, &c)| c).collect();
        let mut cand = vec![head.clone()];
        cand.extend(best_suffix(comps, &rest, &m));
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

/// Representative of the code up to crossing relabeling, cyclic rotation of
/// each component, component order, and orientation reversal of any subset of
/// components.
pub fn canonical_form(code: &GaussCode) -> GaussCode {
    let k = code.components.len();
    let mut best: Option<Vec<Vec<u32>>> = None;
    for mask_bits in 0u64..(1u64 << k) {
        let mask: Vec<bool> = (0..k).map(|i| mask_bits >> i & 1 == 1).collect();
        let oriented = code.reorient(&mask);
        let left: Vec<usize> = (0..k).collect();
        let cand = best_suffix(&oriented.components, &left, &BTreeMap::new());
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    let comps = best
        .unwrap_or_default()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|e| Token {
                    id: e >> 2,
                    passage: if e & 2 == 0 { Passage::Over } else { Passage::Under },
                    sign: if e & 1 == 0 { 1 } else { -1 },
                })
                .collect()
        })
        .collect();
    GaussCode { components: comps, free_loops: code.free_loops }
}

pub fn canonical(code: &GaussCode) -> CanonicalCode {
    let mut s = String::new();
    let _ = write!(s, "{}", canonical_form(code));
    CanonicalCode(s)
}

//! Kauffman bracket, normalized f-polynomial, 2-cabling, and fingerprints.
//!
//! At a crossing with incoming and outgoing ends `in_o, out_o` on the over
//! strand and `in_u, out_u` on the under strand, the A-smoothing joins
//! `in_u` with `out_o` and `out_u` with `in_o` when the sign is positive, and
//! `in_u` with `in_o` and `out_u` with `out_o` when it is negative. The
//! B-smoothing takes the other non-crossing pairing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::Laurent;
use crate::trace::{GaussCode, Passage, Token};

/// Largest crossing count accepted by the bracket.
pub const MAX_BRACKET_CROSSINGS: usize = 64;
/// Largest crossing count of a knot whose 2-cable is computed.
pub const MAX_CABLE_CROSSINGS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    TooManyCrossings { crossings: usize, cap: usize },
    NotAKnot,
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::TooManyCrossings { crossings, cap } => {
                write!(f, "{crossings} crossings exceed the cap of {cap}")
            }
            InvariantError::NotAKnot => write!(f, "2-cabling needs a one-component code"),
        }
    }
}

impl core::error::Error for InvariantError {}

/// Endpoints of the four strand ends at one crossing.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CrossingEnds {
    pub in_o: u32,
    pub out_o: u32,
    pub in_u: u32,
    pub out_u: u32,
    pub sign: i8,
}

impl CrossingEnds {
    /// The two pairs joined by the A-smoothing, then by the B-smoothing.
    pub fn smoothings(&self) -> [[(u32, u32); 2]; 2] {
        let s1 = [(self.in_u, self.out_o), (self.out_u, self.in_o)];
        let s2 = [(self.in_u, self.in_o), (self.out_u, self.out_o)];
        if self.sign > 0 {
            [s1, s2]
        } else {
            [s2, s1]
        }
    }
}

/// Number the edges of the diagram and list the ends at each crossing.
/// Edge `e` leaves one passage and enters the next; its start endpoint is
/// `2e` and its end endpoint is `2e + 1`.
pub(crate) fn crossing_ends(code: &GaussCode) -> Vec<CrossingEnds> {
    let mut base = 0u32;
    let mut ends: BTreeMap<u32, [Option<(u32, u32)>; 2]> = BTreeMap::new();
    let mut signs: BTreeMap<u32, i8> = BTreeMap::new();
    let mut order: Vec<u32> = Vec::new();
    for comp in &code.components {
        let len = comp.len() as u32;
        for (k, t) in comp.iter().enumerate() {
            let k = k as u32;
            let prev = base + (k + len - 1) % len;
            let this = base + k;
            let slot = if t.passage == Passage::Over { 0 } else { 1 };
            let e = ends.entry(t.id).or_insert([None, None]);
            e[slot] = Some((2 * prev + 1, 2 * this));
            signs.insert(t.id, t.sign);
            if !order.contains(&t.id) {
                order.push(t.id);
            }
        }
        base += len;
    }
    order
        .iter()
        .map(|id| {
            let e = ends[id];
            let (in_o, out_o) = e[0].expect("over passage");
            let (in_u, out_u) = e[1].expect("under passage");
            CrossingEnds { in_o, out_o, in_u, out_u, sign: signs[id] }
        })
        .collect()
}

fn check_cap(code: &GaussCode, cap: usize) -> Result<(), InvariantError> {
    let c = code.crossing_count();
    if c > cap {
        return Err(InvariantError::TooManyCrossings { crossings: c, cap });
    }
    Ok(())
}

/// Choose the next crossing to contract: the one with the most ends already
/// attached to the processed part of the diagram.
fn contraction_order(xs: &[CrossingEnds]) -> Vec<usize> {
    let edge_count = xs.len() * 2;
    let mut owner = vec![[usize::MAX; 2]; edge_count];
    for (i, x) in xs.iter().enumerate() {
        for p in [x.in_o, x.out_o, x.in_u, x.out_u] {
            owner[(p / 2) as usize][(p % 2) as usize] = i;
        }
    }
    let mut done = vec![false; xs.len()];
    let mut order = Vec::with_capacity(xs.len());
    for _ in 0..xs.len() {
        let mut best = None;
        let mut best_score = -1i32;
        for (i, x) in xs.iter().enumerate() {
            if done[i] {
                continue;
            }
            let score = [x.in_o, x.out_o, x.in_u, x.out_u]
                .iter()
                .filter(|&&p| {
                    let other = owner[(p / 2) as usize][(1 - p % 2) as usize];
                    other != i && done[other]
                })
                .count() as i32;
            if score > best_score {
                best_score = score;
                best = Some(i);
            }
        }
        let b = best.unwrap();
        done[b] = true;
        order.push(b);
    }
    order
}

/// Connectivity of the processed part: partner of every open endpoint whose
/// partner is not the other end of its own edge, as sorted `(a, b)` pairs.
type Frontier = Vec<(u32, u32)>;

fn glue(map: &mut BTreeMap<u32, u32>, p: u32, q: u32) -> bool {
    let pp = map.remove(&p).unwrap_or(p ^ 1);
    let pq = map.remove(&q).unwrap_or(q ^ 1);
    if pp == q {
        return true;
    }
    map.insert(pp, pq);
    map.insert(pq, pp);
    false
}

/// Kauffman bracket normalized so the crossingless unknot has value 1. The
/// empty link is assigned 1 as well.
pub fn kauffman_bracket(code: &GaussCode) -> Result<Laurent, InvariantError> {
    check_cap(code, MAX_BRACKET_CROSSINGS)?;
    let d = Laurent::loop_value();
    if code.components.is_empty() {
        return Ok(if code.free_loops == 0 { Laurent::one() } else { d.pow(code.free_loops as u32 - 1) });
    }
    let xs = crossing_ends(code);
    let a = Laurent::monomial(1, 1);
    let b = Laurent::monomial(1, -1);
    let mut states: BTreeMap<Frontier, Laurent> = BTreeMap::new();
    states.insert(Vec::new(), Laurent::one());
    for i in contraction_order(&xs) {
        let x = xs[i];
        let mut next: BTreeMap<Frontier, Laurent> = BTreeMap::new();
        for (key, poly) in &states {
            for (k, pairs) in x.smoothings().iter().enumerate() {
                let mut map: BTreeMap<u32, u32> = BTreeMap::new();
                for &(p, q) in key {
                    map.insert(p, q);
                    map.insert(q, p);
                }
                let mut loops = 0;
                for &(p, q) in pairs {
                    if glue(&mut map, p, q) {
                        loops += 1;
                    }
                }
                let mut w = if k == 0 { &a * poly } else { &b * poly };
                for _ in 0..loops {
                    w = &w * &d;
                }
                let nk: Frontier = map.iter().filter(|(p, q)| p < q).map(|(&p, &q)| (p, q)).collect();
                let slot = next.entry(nk).or_default();
                *slot = &*slot + &w;
            }
        }
        states = next;
    }
    debug_assert!(states.len() == 1 && states.contains_key(&Vec::new()));
    let total = states.remove(&Vec::new()).unwrap_or_default();
    let mut r = total.div_loop_value();
    for _ in 0..code.free_loops {
        r = &r * &d;
    }
    Ok(r)
}

/// Writhe-normalized bracket `(-A^3)^(-w) <K>`.
pub fn f_polynomial(code: &GaussCode) -> Result<Laurent, InvariantError> {
    let br = kauffman_bracket(code)?;
    let w = code.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok((&br * &Laurent::monomial(sign, 0)).shift(-3 * w as i32))
}

/// Blackboard 2-cable of a knot with a 0-framing correction.
///
/// The parallel copy runs on the left of the original strand. Each crossing
/// becomes four crossings of the same sign; then `|w|` full twists of sign
/// `-sign(w)` are added between the two copies so their linking number is 0.
pub fn cable2(code: &GaussCode) -> Result<GaussCode, InvariantError> {
    if code.components.is_empty() {
        if code.free_loops == 1 {
            return Ok(GaussCode::unlink(2));
        }
        return Err(InvariantError::NotAKnot);
    }
    if code.component_count() != 1 {
        return Err(InvariantError::NotAKnot);
    }
    check_cap(code, MAX_CABLE_CROSSINGS)?;
    let comp = &code.components[0];
    let ids = code.crossing_ids();
    let index = |id: u32| ids.iter().position(|&x| x == id).unwrap() as u32;
    let cid = |x: u32, over_copy: u32, under_copy: u32| 4 * x + 2 * over_copy + under_copy + 1;
    let mut strands: [Vec<Token>; 2] = [Vec::new(), Vec::new()];
    for t in comp {
        let x = index(t.id);
        for (copy, strand) in strands.iter_mut().enumerate() {
            let copy = copy as u32;
            let others: [u32; 2] = match (t.passage, t.sign > 0) {
                (Passage::Over, true) => [1, 0],
                (Passage::Over, false) => [0, 1],
                (Passage::Under, true) => [0, 1],
                (Passage::Under, false) => [1, 0],
            };
            for o in others {
                let id = if t.passage == Passage::Over { cid(x, copy, o) } else { cid(x, o, copy) };
                strand.push(Token::new(id, t.passage, t.sign));
            }
        }
    }
    let w = code.writhe();
    let twist_sign: i8 = if w > 0 { -1 } else { 1 };
    let mut next = 4 * ids.len() as u32 + 1;
    for _ in 0..w.unsigned_abs() {
        let (t1, t2) = (next, next + 1);
        next += 2;
        let (k, kp) = if twist_sign > 0 {
            ([Passage::Under, Passage::Over], [Passage::Over, Passage::Under])
        } else {
            ([Passage::Over, Passage::Under], [Passage::Under, Passage::Over])
        };
        strands[0].push(Token::new(t1, k[0], twist_sign));
        strands[0].push(Token::new(t2, k[1], twist_sign));
        strands[1].push(Token::new(t1, kp[0], twist_sign));
        strands[1].push(Token::new(t2, kp[1], twist_sign));
    }
    let [a, b] = strands;
    Ok(GaussCode { components: vec![a, b], free_loops: 0 })
}

/// Identification fingerprint: component count, f-polynomial, and for small
/// knots the f-polynomial of the 0-framed 2-cable. Mirror images and
/// orientation reversals of components share one fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub components: usize,
    pub f: Laurent,
    pub f2: Option<Laurent>,
}

impl Fingerprint {
    /// Equal component counts and f-polynomials, and equal cable polynomials
    /// whenever both sides carry one.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.components == other.components
            && self.f == other.f
            && match (&self.f2, &other.f2) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }

    /// Text form `components;f;f2` with `-` for an absent cable polynomial.
    pub fn to_text(&self) -> alloc::string::String {
        use core::fmt::Write as _;
        let mut s = alloc::string::String::new();
        let _ = write!(s, "{};{};", self.components, self.f);
        match &self.f2 {
            Some(p) => {
                let _ = write!(s, "{p}");
            }
            None => s.push('-'),
        }
        s
    }

    pub fn parse(s: &str) -> Option<Fingerprint> {
        let mut it = s.trim().split(';');
        let components = it.next()?.parse().ok()?;
        let f = Laurent::parse(it.next()?)?;
        let f2 = match it.next()? {
            "-" => None,
            t => Some(Laurent::parse(t)?),
        };
        if it.next().is_some() {
            return None;
        }
        Some(Fingerprint { components, f, f2 })
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whether `fingerprint(code, true)` will carry a cable polynomial.
pub fn cable_applies(code: &GaussCode) -> bool {
    code.component_count() == 1 && code.crossing_count() <= MAX_CABLE_CROSSINGS
}

pub fn fingerprint(code: &GaussCode, with_cable: bool) -> Result<Fingerprint, InvariantError> {
    let k = code.components.len();
    let masks = if k == 0 { 1u64 } else { 1u64 << (k - 1) };
    let mut oriented = Vec::new();
    for bits in 0..masks {
        let mask: Vec<bool> = (0..k).map(|i| i > 0 && bits >> (i - 1) & 1 == 1).collect();
        oriented.push(f_polynomial(&code.reorient(&mask))?);
    }
    if k > 1 {
        // Mirroring substitutes A -> A^-1 in every oriented polynomial.
        let f = oriented.iter().flat_map(|f| [f.clone(), f.invert_variable()]).min().unwrap();
        return Ok(Fingerprint { components: code.component_count(), f, f2: None });
    }
    let f = oriented.pop().unwrap();
    let f2 = if with_cable && cable_applies(code) {
        Some(f_polynomial(&cable2(code)?)?)
    } else {
        None
    };
    let mirrored = (f.invert_variable(), f2.as_ref().map(|p| p.invert_variable()));
    let (f, f2) = core::cmp::min((f, f2), mirrored);
    Ok(Fingerprint { components: code.component_count(), f, f2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::trace::mirror;

    fn code(s: &str) -> GaussCode {
        GaussCode::parse(s).unwrap()
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(kauffman_bracket(&GaussCode::unknot()).unwrap(), Laurent::one());
        assert_eq!(kauffman_bracket(&code("O1+U1+")).unwrap(), Laurent::monomial(-1, 3));
        assert_eq!(f_polynomial(&code("O1+U1+")).unwrap(), Laurent::one());
        assert_eq!(f_polynomial(&code("O1-U1-")).unwrap(), Laurent::one());
        assert_eq!(f_polynomial(&code("U1-O1-")).unwrap(), Laurent::one());
    }

    #[test]
    fn classical_trefoil_and_figure_eight() {
        let left = f_polynomial(&code("O1-U2-O3-U1-O2-U3-")).unwrap();
        assert_eq!(left.to_string(), "A^4+A^12-A^16");
        let fig8 = f_polynomial(&code("O1-U2+O3+U1-O4-U3+O2+U4-")).unwrap();
        assert_eq!(fig8, fig8.invert_variable());
        assert_eq!(fig8.to_string(), "A^-8-A^-4+1-A^4+A^8");
    }

    #[test]
    fn free_loop_multiplies_by_loop_value() {
        let c = code("O1-U2-O3-U1-O2-U3-");
        let mut c2 = c.clone();
        c2.free_loops += 1;
        let b = kauffman_bracket(&c).unwrap();
        assert_eq!(kauffman_bracket(&c2).unwrap(), &b * &Laurent::loop_value());
    }

    #[test]
    fn cable_of_unknots() {
        let unlink = f_polynomial(&GaussCode::unlink(2)).unwrap();
        assert_eq!(cable2(&GaussCode::unknot()).unwrap(), GaussCode::unlink(2));
        for k in ["O1+U1+", "O1-U1-", "O1+U1+O2-U2-", "O1+U1+O2+U2+"] {
            let c = cable2(&code(k)).unwrap();
            assert_eq!(c.crossing_count(), 4 * code(k).crossing_count() + 2 * code(k).writhe().unsigned_abs() as usize);
            assert_eq!(f_polynomial(&c).unwrap(), unlink, "{k}");
        }
    }

    #[test]
    fn fingerprints_distinguish() {
        let t = fingerprint(&code("O1-U2-O3-U1-O2-U3-"), true).unwrap();
        let tm = fingerprint(&mirror(&code("O1-U2-O3-U1-O2-U3-")), true).unwrap();
        let f8 = fingerprint(&code("O1-U2+O3+U1-O4-U3+O2+U4-"), true).unwrap();
        let vt = fingerprint(&code("O1+U2+U1+O2+"), true).unwrap();
        assert_eq!(t, tm);
        assert_ne!(t, f8);
        assert_ne!(vt, t);
        assert_ne!(vt.f, Laurent::one());
        assert_eq!(fingerprint(&GaussCode::unknot(), true).unwrap(), Fingerprint {
            components: 1,
            f: Laurent::one(),
            f2: Some(f_polynomial(&GaussCode::unlink(2)).unwrap()),
        });
        let fp = Fingerprint::parse(&vt.to_text()).unwrap();
        assert_eq!(fp, vt);
    }
}

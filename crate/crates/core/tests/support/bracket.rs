//! Direct state sum of the bracket and an enumeration of small Gauss codes.

use std::collections::BTreeMap;

use vmosaic_core::invariants::{f_polynomial, kauffman_bracket};
use vmosaic_core::trace::{mirror, GaussCode, Passage, Token};
use vmosaic_core::Laurent;

type Poly = BTreeMap<i32, i128>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&ea, &ca) in a {
        for (&eb, &cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn to_laurent(p: &Poly) -> Laurent {
    let terms: Vec<(i32, i128)> = p.iter().map(|(&e, &c)| (e, c)).collect();
    Laurent::from_terms(&terms)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra] = rb;
}

/// Sum over all 2^c smoothings of A^(#A - #B) d^(loops - 1). Arc k runs from
/// token k to the next token of its component; node 2k is its start and
/// 2k + 1 its end.
pub fn state_sum(code: &GaussCode) -> Laurent {
    let tokens: Vec<Token> = code.components.iter().flatten().copied().collect();
    let mut prev = vec![0; tokens.len()];
    let mut base = 0;
    for comp in &code.components {
        for i in 0..comp.len() {
            prev[base + i] = base + (i + comp.len() - 1) % comp.len();
        }
        base += comp.len();
    }
    let mut ids: Vec<u32> = tokens.iter().map(|t| t.id).collect();
    ids.sort();
    ids.dedup();
    // (over-in, over-out, under-in, under-out, sign) per crossing.
    let ends: Vec<(usize, usize, usize, usize, i8)> = ids
        .iter()
        .map(|&id| {
            let p = tokens.iter().position(|t| t.id == id && t.passage == Passage::Over).unwrap();
            let q = tokens.iter().position(|t| t.id == id && t.passage == Passage::Under).unwrap();
            (2 * prev[p] + 1, 2 * p, 2 * prev[q] + 1, 2 * q, tokens[p].sign)
        })
        .collect();
    let d: Poly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut total = Poly::new();
    for state in 0u32..1 << ends.len() {
        let mut parent: Vec<usize> = (0..2 * tokens.len()).collect();
        for k in 0..tokens.len() {
            union(&mut parent, 2 * k, 2 * k + 1);
        }
        let mut a_count = 0i32;
        for (i, &(oi, oo, ui, uo, sign)) in ends.iter().enumerate() {
            let a_smoothing = state >> i & 1 == 0;
            let pairs = match (sign > 0, a_smoothing) {
                (true, true) => [(uo, oi), (ui, oo)],
                (true, false) => [(uo, oo), (oi, ui)],
                (false, true) => [(ui, oi), (uo, oo)],
                (false, false) => [(ui, oo), (uo, oi)],
            };
            for (x, y) in pairs {
                union(&mut parent, x, y);
            }
            a_count += a_smoothing as i32;
        }
        let loops = (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count() + code.free_loops;
        let mut term: Poly = [(2 * a_count - ends.len() as i32, 1)].into_iter().collect();
        for _ in 1..loops {
            term = mul(&term, &d);
        }
        for (e, c) in term {
            *total.entry(e).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    to_laurent(&total)
}

/// Sequences of length 2c in which each of 1..=c occurs twice and ids first
/// appear in increasing order.
fn sequences(c: u32) -> Vec<Vec<u32>> {
    fn rec(c: u32, seq: &mut Vec<u32>, seen: &mut Vec<u8>, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * c as usize {
            out.push(seq.clone());
            return;
        }
        let opened = seen.iter().filter(|&&k| k > 0).count() as u32;
        for id in 1..=c {
            let k = seen[id as usize - 1];
            if k == 1 || (k == 0 && id == opened + 1) {
                seen[id as usize - 1] += 1;
                seq.push(id);
                rec(c, seq, seen, out);
                seq.pop();
                seen[id as usize - 1] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(c, &mut Vec::new(), &mut vec![0; c as usize], &mut out);
    out
}

/// Ways to cut a sequence of length `len` into consecutive components,
/// given as lists of cut positions, with at most `max_parts` parts.
fn splits(len: usize, max_parts: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (len - 1))
        .filter(|m| (m.count_ones() as usize) < max_parts)
        .map(|m| (1..len).filter(|&i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn build(seq: &[u32], over_first: u32, signs: u32, cuts: &[usize], free: usize) -> GaussCode {
    let mut seen = vec![false; seq.len()];
    let tokens: Vec<Token> = seq
        .iter()
        .map(|&id| {
            let i = id as usize - 1;
            let first = !seen[i];
            seen[i] = true;
            let over = (over_first >> i & 1 == 1) == first;
            let sign = if signs >> i & 1 == 1 { -1 } else { 1 };
            Token::new(id, if over { Passage::Over } else { Passage::Under }, sign)
        })
        .collect();
    let mut comps = Vec::new();
    let mut start = 0;
    for &cut in cuts.iter().chain([seq.len()].iter()) {
        comps.push(tokens[start..cut].to_vec());
        start = cut;
    }
    GaussCode::new(comps, free).unwrap()
}

/// Compare the library bracket with the state sum on every code with `c`
/// crossings cut into at most `max_parts` components, and check the mirror
/// law on every `mirror_every`-th code. Returns the number of codes checked.
pub fn check_all(c: u32, max_parts: usize, free_loops: &[usize], mirror_every: usize) -> Result<usize, String> {
    check_part(c, max_parts, free_loops, mirror_every, 0, 1)
}

/// The share of `check_all` whose crossing sequences have index `part`
/// modulo `parts`.
pub fn check_part(
    c: u32,
    max_parts: usize,
    free_loops: &[usize],
    mirror_every: usize,
    part: usize,
    parts: usize,
) -> Result<usize, String> {
    let mut checked = 0;
    for seq in sequences(c).into_iter().skip(part).step_by(parts) {
        for cuts in splits(seq.len(), max_parts) {
            for over in 0..1u32 << c {
                for signs in 0..1u32 << c {
                    for &free in free_loops {
                        let code = build(&seq, over, signs, &cuts, free);
                        let bracket = kauffman_bracket(&code).unwrap();
                        if bracket != state_sum(&code) {
                            return Err(format!("bracket of {code}: {bracket} vs state sum {}", state_sum(&code)));
                        }
                        if checked % mirror_every == 0 {
                            let f = f_polynomial(&code).unwrap();
                            if f_polynomial(&mirror(&code)).unwrap() != f.invert_variable() {
                                return Err(format!("mirror law fails for {code}"));
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

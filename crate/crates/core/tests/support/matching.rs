//! Surface genus of a boundary gluing from its Euler characteristic, and
//! brute-force matching enumeration.

use vmosaic_core::surface::NONE;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Glue the sides of a polygon whose side s runs from corner s to corner
/// s + 1, reversing orientation on each glued pair, and read the genus off
/// V - E + F = 2 - 2g.
pub fn euler_genus(partner: &[usize]) -> usize {
    let m = partner.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for (s, &t) in partner.iter().enumerate() {
        for (a, b) in [(s, (t + 1) % m), ((s + 1) % m, t)] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let v = (0..m).filter(|&x| find(&mut parent, x) == x).count();
    let twice = m / 2 + 1 - v;
    assert_eq!(twice % 2, 0);
    twice / 2
}

pub fn crossing_chords(partner: &[usize]) -> bool {
    let m = partner.len();
    (0..m).any(|a| {
        let b = partner[a];
        (a + 1..b).any(|c| partner[c] < a || partner[c] > b)
    })
}

pub fn all_matchings(slots: &[usize], partner: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let Some((&a, rest)) = slots.split_first() else {
        visit(partner);
        return;
    };
    for (k, &b) in rest.iter().enumerate() {
        let mut remaining = rest.to_vec();
        remaining.remove(k);
        partner[a] = b;
        partner[b] = a;
        all_matchings(&remaining, partner, visit);
        partner[a] = NONE;
        partner[b] = NONE;
    }
}

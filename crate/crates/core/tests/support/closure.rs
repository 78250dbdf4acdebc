//! Gauss code of a closed virtual braid read directly off the word.

use rand::rngs::StdRng;
use rand::Rng;
use vmosaic_core::braid::{BraidWord, Generator};
use vmosaic_core::trace::{GaussCode, Passage, Token};

/// Gauss code of the closure, walking each strand down the braid. Strand
/// positions sit at x = 0..k and the braid runs towards negative y.
pub fn closure_gauss(word: &BraidWord) -> GaussCode {
    let k = word.strands();
    let letters = word.letters();
    let mut seen = vec![false; k];
    let mut comps = Vec::new();
    let mut free = 0;
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut pos = start;
        loop {
            seen[pos] = true;
            for (j, g) in letters.iter().enumerate() {
                let lo = g.index() - 1;
                if pos != lo && pos != lo + 1 {
                    continue;
                }
                let other = if pos == lo { lo + 1 } else { lo };
                if let Generator::Sigma(_) | Generator::SigmaInv(_) = g {
                    let over_from = if matches!(g, Generator::Sigma(_)) { lo } else { lo + 1 };
                    let dir = |from: usize| if from == lo { (1i32, -1i32) } else { (-1, -1) };
                    let under_from = if over_from == lo { lo + 1 } else { lo };
                    let (o, u) = (dir(over_from), dir(under_from));
                    let sign = if o.0 * u.1 - o.1 * u.0 > 0 { 1 } else { -1 };
                    let passage = if pos == over_from { Passage::Over } else { Passage::Under };
                    comp.push(Token::new(j as u32 + 1, passage, sign));
                }
                pos = other;
            }
            if pos == start {
                break;
            }
        }
        if comp.is_empty() {
            free += 1;
        } else {
            comps.push(comp);
        }
    }
    GaussCode::new(comps, free).unwrap()
}

pub fn random_word(rng: &mut StdRng) -> BraidWord {
    let k = rng.gen_range(1..=4);
    let len = if k == 1 { 0 } else { rng.gen_range(0..=6) };
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..k);
            match rng.gen_range(0..3) {
                0 => Generator::Sigma(i),
                1 => Generator::SigmaInv(i),
                _ => Generator::Virtual(i),
            }
        })
        .collect();
    BraidWord::new(k, letters).unwrap()
}

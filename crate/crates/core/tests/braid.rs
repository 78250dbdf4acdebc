//! Closed virtual braids drawn on the board agree with the Gauss code read
//! directly off the braid word.

mod support;

use rand::rngs::StdRng;
use rand::SeedableRng;
use support::closure::{closure_gauss, random_word};
use vmosaic_core::braid::{braid_to_mosaic, elimination_steps, layout, BraidWord, StagingCell};
use vmosaic_core::invariants::fingerprint;
use vmosaic_core::surface::BoundaryPairing;
use vmosaic_core::trace::{canonical, trace, GaussCode};
use vmosaic_core::{MosaicGrid, Tile, VirtualMosaic};

fn word(k: usize, text: &str) -> BraidWord {
    BraidWord::parse(k, text).unwrap()
}

#[test]
fn figure_layout() {
    let vm = layout(&word(4, "s2^-1 s3 v2 s1^-1"));
    let rows: Vec<String> =
        vm.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
    assert_eq!(
        rows,
        [
            "T7 T7 T1 T0 T0 T0",
            "T7 T9 T7 T1 T0 T0",
            "T3 T7 T7 T10 T1 T0",
            "T0 T3 T7 V T7 T1",
            "T0 T0 T3 T7 T7 T7",
            "T0 T0 T0 T3 T9 T7",
        ]
    );
    assert_eq!(vm.virtual_count(), 1);
    // Closure labels: N{c,d}, E rows 4 and 5 {d,c}, S{b,a}, W rows 1 and 0 {a,b}.
    let p = vm.pairing();
    assert_eq!(p.partner(0), 11);
    assert_eq!(p.partner(1), 10);
    assert_eq!(p.partner(12), 23);
    assert_eq!(p.partner(13), 22);

    let steps = elimination_steps(&vm);
    let last = steps.last().unwrap();
    assert_eq!(last.virtual_count(), 0);
    assert_eq!(last.crossing_count(), 3);
    let out = braid_to_mosaic(&word(4, "s2^-1 s3 v2 s1^-1"));
    assert_eq!(out.grid().crossing_count(), 3);
}

#[test]
fn virtual_front_crossing_becomes_t7_with_swapped_entries() {
    let vm = layout(&word(3, "v1 s2"));
    let steps = elimination_steps(&vm);
    assert_eq!(steps.len(), 2);
    let (a, b) = (&steps[0], &steps[1]);
    let mut changed = Vec::new();
    for r in 0..a.n() {
        for c in 0..a.n() {
            if a.cell(r, c) != b.cell(r, c) {
                changed.push((a.cell(r, c), b.cell(r, c)));
            }
        }
    }
    assert_eq!(changed, [(StagingCell::Virtual, StagingCell::Tile(Tile::T7))]);
    let moved: Vec<usize> =
        (0..4 * a.n()).filter(|&s| a.pairing().partner(s) != b.pairing().partner(s)).collect();
    assert_eq!(moved.len(), 4);
}

#[test]
fn trivial_words() {
    for k in 1..=4 {
        let out = braid_to_mosaic(&BraidWord::new(k, vec![]).unwrap());
        assert_eq!(trace(&out), GaussCode::unlink(k));
    }
    let s1 = braid_to_mosaic(&word(2, "s1"));
    assert_eq!(s1.grid().crossing_count(), 1);
    assert_eq!(trace(&s1).component_count(), 1);
    // A lone virtual crossing closes up into a single unknotted strand.
    let v1 = braid_to_mosaic(&word(2, "v1"));
    assert_eq!(v1.grid().crossing_count(), 0);
    assert_eq!(trace(&v1), GaussCode::unknot());
    assert_eq!(closure_gauss(&word(2, "v1")), GaussCode::unknot());
    // Without virtual crossings the layout is returned as drawn.
    let plain = layout(&word(3, "s1 s2^-1 s1 s2^-1"));
    assert_eq!(elimination_steps(&plain).len(), 1);
}

#[test]
fn trefoil_and_virtual_trefoil() {
    let fp = |vm: &VirtualMosaic| fingerprint(&trace(vm), true).unwrap();
    let trefoil = VirtualMosaic::new(
        MosaicGrid::new(2, vec![Tile::T10, Tile::T1, Tile::T9, Tile::T10]).unwrap(),
        BoundaryPairing::new(2, &[(0, 3), (1, 2), (4, 5), (6, 7)]).unwrap(),
    )
    .unwrap();
    let classical = fingerprint(&GaussCode::parse("O1+U2+O3+U1+O2+U3+").unwrap(), true).unwrap();
    assert_eq!(fp(&trefoil), classical);
    assert_eq!(fp(&braid_to_mosaic(&word(2, "s1 s1 s1"))), classical);

    let vtrefoil = VirtualMosaic::new(
        MosaicGrid::new(2, vec![Tile::T10, Tile::T1, Tile::T9, Tile::T8]).unwrap(),
        BoundaryPairing::new(2, &[(0, 3), (1, 2), (4, 6), (5, 7)]).unwrap(),
    )
    .unwrap();
    assert_eq!(fp(&braid_to_mosaic(&word(2, "v1 s1 s1"))), fp(&vtrefoil));

    let unknot = fingerprint(&GaussCode::unknot(), true).unwrap();
    assert_eq!(fp(&braid_to_mosaic(&word(1, ""))), unknot);
}

#[test]
fn random_words_match_the_closure() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut with_virtual = 0;
    for _ in 0..200 {
        let w = random_word(&mut rng);
        let expected = closure_gauss(&w);
        let staged = layout(&w);
        let steps = elimination_steps(&staged);
        for (k, s) in steps.iter().enumerate() {
            assert_eq!(canonical(&s.trace()), canonical(&expected), "{w} step {k}");
        }
        let out = braid_to_mosaic(&w);
        assert_eq!(out.grid().crossing_count(), expected.crossing_count(), "{w}");
        assert_eq!(canonical(&trace(&out)), canonical(&expected), "{w}");
        assert_eq!(fingerprint(&trace(&out), true).unwrap(), fingerprint(&expected, true).unwrap(), "{w}");
        if staged.virtual_count() > 0 {
            with_virtual += 1;
        }
    }
    assert!(with_virtual > 50);
}

//! Random walks through the move calculus keep the knot type.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use vmosaic_core::invariants::fingerprint;
use vmosaic_core::moves::{compile_rules, Family, FamilyKind};
use vmosaic_core::surface::BoundaryPairing;
use vmosaic_core::trace::{canonical, trace};
use vmosaic_core::{MosaicGrid, Tile, VirtualMosaic};

fn mosaic(n: usize, tiles: &[u8], pairs: &[(usize, usize)]) -> VirtualMosaic {
    let cells = tiles.iter().map(|&k| Tile::from_index(k as usize).unwrap()).collect();
    VirtualMosaic::new(MosaicGrid::new(n, cells).unwrap(), BoundaryPairing::new(n, pairs).unwrap()).unwrap()
}

fn starts() -> Vec<VirtualMosaic> {
    vec![
        mosaic(2, &[10, 1, 9, 10], &[(0, 3), (1, 2), (4, 5), (6, 7)]),
        mosaic(2, &[10, 7, 9, 8], &[(0, 2), (1, 3), (4, 6), (5, 7)]),
        mosaic(2, &[10, 9, 10, 7], &[(0, 1), (2, 5), (3, 6), (4, 7)]),
        mosaic(3, &[9, 1, 2, 3, 9, 10, 2, 10, 4], &[(0, 3), (1, 2), (4, 7), (5, 6), (8, 11), (9, 10)]),
        mosaic(1, &[9], &[(0, 2), (1, 3)]),
    ]
}

#[test]
fn random_walks_preserve_fingerprints() {
    let table = compile_rules();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut applied = 0;
    let mut per_family = std::collections::BTreeMap::new();
    for start in starts() {
        let target = fingerprint(&trace(&start), true).unwrap();
        let mut vm = start.clone();
        for _ in 0..800 {
            let fam = *Family::ALL.choose(&mut rng).unwrap();
            if fam == Family::Inject && vm.n() >= 5 {
                continue;
            }
            let sites = table.find_sites(&vm, fam);
            let Some(site) = sites.choose(&mut rng) else { continue };
            let out = table.apply(&vm, site).unwrap();
            if out.grid().crossing_count() > 9 {
                continue;
            }
            let (before, after) = (trace(&vm), trace(&out));
            if fam.kind() != FamilyKind::Reidemeister {
                assert_eq!(canonical(&before), canonical(&after), "{fam} changed the Gauss code");
            }
            let f = fingerprint(&after, true).unwrap();
            assert!(f.matches(&target), "{fam} changed the fingerprint: {f} vs {target}");
            let (g0, g1) = (vm.genus() as i64, out.genus() as i64);
            match fam.kind() {
                FamilyKind::Stabilization => assert!((g0 - g1).abs() <= 1),
                FamilyKind::Relabel => {}
                FamilyKind::Resize if fam == Family::ClassicalImport => {}
                _ => assert_eq!(g0, g1, "{fam} changed genus"),
            }
            *per_family.entry(fam).or_insert(0usize) += 1;
            applied += 1;
            vm = out;
        }
    }
    assert!(applied >= 1000, "only {applied} applications: {per_family:?}");
    assert!(per_family.len() >= 10, "{per_family:?}");
}

//! Every compiled rule instance is exercised on randomly generated host
//! mosaics that contain its left-hand side. The result must keep the knot
//! type, respect the genus rules of its family, and be undone by a site of
//! the same family.

mod support;

use rand::rngs::StdRng;
use rand::SeedableRng;
use support::hosts::host;
use vmosaic_core::invariants::fingerprint;
use vmosaic_core::moves::{compile_rules, FamilyKind, RuleTable};
use vmosaic_core::trace::{canonical, trace};

fn check_instance(table: &RuleTable, family: vmosaic_core::moves::Family, ii: usize, rng: &mut StdRng) -> usize {
    let inst = &table.rule(family).unwrap().instances[ii];
    let extent = inst.pieces.iter().map(|p| p.height.max(p.width)).max().unwrap();
    let mut applied = 0;
    for (vi, var) in inst.variants.iter().enumerate() {
        let mut hits = 0;
        for attempt in 0..40 {
            if hits >= 2 {
                break;
            }
            let m = extent + inst.pieces.len() - 1 + attempt % 2;
            let Some(vm) = host(inst, var, m, rng) else { continue };
            let sites: Vec<_> = table
                .find_sites(&vm, family)
                .into_iter()
                .filter(|s| s.instance == ii && s.variant == vi)
                .collect();
            for site in &sites {
                let out = table.apply(&vm, site).expect("site applies");
                let before = trace(&vm);
                let after = trace(&out);
                if family.kind() == FamilyKind::Reidemeister {
                    let fa = fingerprint(&before, false).unwrap();
                    let fb = fingerprint(&after, false).unwrap();
                    assert_eq!(fa, fb, "{family} instance {ii} variant {vi} on\n{vm:?}");
                } else {
                    assert_eq!(canonical(&before), canonical(&after), "{family} instance {ii} variant {vi} on\n{vm:?}");
                }
                let (g0, g1) = (vm.genus() as i64, out.genus() as i64);
                match family.kind() {
                    FamilyKind::Stabilization => assert!((g0 - g1).abs() <= 1, "{family} genus {g0} -> {g1}"),
                    _ => assert_eq!(g0, g1, "{family} instance {ii} variant {vi} genus"),
                }
                let back = table.find_sites(&out, family).into_iter().any(|s| table.apply(&out, &s).unwrap() == vm);
                assert!(back, "{family} instance {ii} variant {vi} has no inverse site");
                applied += 1;
            }
            if !sites.is_empty() {
                hits += 1;
            }
        }
        let trivial = var.before == var.after
            && inst.pieces.iter().all(|p| p.labels.iter().all(|l| l.before == l.after));
        assert!(hits > 0 || trivial, "{family} instance {ii} variant {vi} never matched a host");
    }
    applied
}

#[test]
fn every_instance_preserves_knot_type_on_hosts() {
    let table = compile_rules();
    let mut rng = StdRng::seed_from_u64(7);
    let mut total = 0;
    for rule in table.rules() {
        for ii in 0..rule.instances.len() {
            total += check_instance(&table, rule.family, ii, &mut rng);
        }
    }
    assert!(total > 1000, "only {total} applications");
}

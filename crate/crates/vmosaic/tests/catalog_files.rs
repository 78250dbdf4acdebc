//! Shipped catalog tables and catalog file IO.

use vmosaic::catalogs::{ambiguity_report, builtin, load, save, CLASSICAL, VIRTUAL};
use vmosaic::corpus::{default_root, read_mosaic};
use vmosaic_core::catalog::{Catalog, Source};
use vmosaic_core::invariants::fingerprint;
use vmosaic_core::trace::{canonical, trace};

#[test]
fn virtual_table_matches_the_corpus() {
    let cat = Catalog::ingest(VIRTUAL).unwrap();
    assert_eq!(cat.len(), 30);
    for e in cat.entries() {
        assert_eq!(e.source, Source::MosaicCorpus);
        let vm = read_mosaic(&default_root().join(format!("appendixB/{}.vm", e.name))).unwrap();
        assert_eq!(canonical(&trace(&vm)), canonical(&e.code), "{}", e.name);
    }
}

#[test]
fn classical_table_is_well_formed() {
    let cat = Catalog::ingest(CLASSICAL).unwrap();
    assert!(cat.get("0_1").is_some() && cat.get("8_21").is_some() && cat.get("9_49").is_some());
    for e in cat.entries() {
        assert_eq!(e.source, Source::ClassicalTable);
        let crossings: usize = e.name.split('_').next().unwrap().parse().unwrap();
        assert_eq!(e.code.crossing_count(), crossings, "{}", e.name);
    }
    // The plain and cable polynomials separate every classical knot in the table.
    assert!(cat.collisions().is_empty(), "{:?}", cat.collisions());
}

#[test]
fn ambiguity_report_lists_the_shared_fingerprints() {
    let report = ambiguity_report(&builtin());
    let groups: Vec<&str> = report.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert!(groups.contains(&"2.1 4.4"), "{report}");
    assert!(groups.contains(&"3_1 3.6"), "{report}");
    assert!(groups.contains(&"4.8 4.12"), "{report}");
    assert!(groups.contains(&"0_1 4.55 4.77"), "{report}");
    assert!(ambiguity_report(&Catalog::ingest(VIRTUAL).unwrap()).lines().count() >= 3);
}

#[test]
fn files_round_trip() {
    let cat = builtin();
    let path = std::env::temp_dir().join(format!("vmosaic-catalog-{}.tsv", std::process::id()));
    save(&cat, &path).unwrap();
    let back = load(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, cat);
    for (a, b) in back.entries().iter().zip(cat.entries()) {
        assert_eq!(a.fingerprint.to_text(), b.fingerprint.to_text());
    }
    let missing = load(std::path::Path::new("/nonexistent/catalog.tsv"));
    assert!(missing.is_err());
}

#[test]
fn both_virtual_trefoil_mosaics_get_one_name() {
    let cat = builtin();
    let names: Vec<Vec<&str>> = ["figures/vtrefoil_genus1.vm", "figures/vtrefoil_genus2.vm"]
        .iter()
        .map(|f| {
            let vm = read_mosaic(&default_root().join(f)).unwrap();
            cat.identify(&fingerprint(&trace(&vm), true).unwrap())
        })
        .collect();
    assert_eq!(names[0], names[1]);
    assert_eq!(names[0][0], "2.1");
}

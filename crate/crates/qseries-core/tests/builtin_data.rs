//! Pins the shipped catalog data file to the programmatic builders.

use qseries_core::catalog::{build_catalog, Catalog};

#[test]
fn shipped_catalog_matches_the_builders() {
    let built = build_catalog();
    let want = built.to_ron().unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.ron");
    if std::env::var_os("REGEN_CATALOG").is_some() {
        std::fs::write(path, want).unwrap();
        // The embedded copy refreshes on the next compile.
        return;
    }
    let shipped = std::fs::read_to_string(path).unwrap();
    assert_eq!(
        shipped, want,
        "data/catalog.ron is stale; rerun with REGEN_CATALOG=1 and recompile"
    );
    let parsed = Catalog::builtin().unwrap();
    assert_eq!(parsed, built);
}

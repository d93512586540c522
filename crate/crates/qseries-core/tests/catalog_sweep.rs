//! Every record in the shipped catalog, every sample, at a reduced window.
//!
//! The acceptance suite replays the catalog at each record's full default
//! order; this sweep keeps the whole table honest on every test run at a
//! fraction of the cost. A transcription slip in any record shows up here
//! as a named failure long before the expensive run.

use qseries_core::catalog::build_catalog;
use qseries_core::catalog::verify_sample;
use qseries_core::sums::EngineConfig;

#[test]
fn every_catalog_sample_passes_at_reduced_order() {
    let catalog = build_catalog();
    let cfg = EngineConfig::default();
    let mut failures = Vec::new();
    for record in &catalog.records {
        let order = record.default_order.min(40);
        for s in &record.samples {
            let report = verify_sample(record, s, order, &cfg);
            if !report.verdict.is_pass() {
                failures.push(format!("{} / {}: {:?}", record.id, s.name, report.verdict));
            }
        }
    }
    assert!(failures.is_empty(), "{} failing samples:\n{}", failures.len(), failures.join("\n"));
}

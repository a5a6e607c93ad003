//! Sweeps the default catalog and prints every failing check.

use std::time::Instant;

use nilgraph_core::verify::{default_catalog, run_catalog};

fn main() {
    let catalog = default_catalog();
    println!("{} entries", catalog.len());
    let start = Instant::now();
    let report = run_catalog(&catalog, None).expect("all check names are known");
    for entry in &report.entries {
        match entry.report() {
            None => println!("error in {}: {:?}", entry.name, entry.result),
            Some(r) => {
                for (check, outcome) in r.failures() {
                    println!("FAIL {} [{}]: {:?}", entry.name, check, outcome);
                }
            }
        }
    }
    println!("{:#?}", report.summary.max_connected_diameter);
    println!("{:#?}", report.summary.max_component_diameter);
    println!(
        "failures {} errors {} in {:.1?}",
        report.summary.failures,
        report.summary.errors,
        start.elapsed()
    );
}

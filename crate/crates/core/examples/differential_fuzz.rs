//! Random weakly C(4) presentations, solver against oracle.
//!
//! `cargo run --release --example differential_fuzz -- 200`

use small_overlap::differential::{fuzz, FuzzConfig};

fn main() {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    match fuzz(0..seeds, FuzzConfig::default()) {
        Ok(report) => {
            println!(
                "{} presentations ({} seeds skipped), {} queries, {} case dispatches, {} audit violations",
                report.seeds,
                report.skipped_seeds,
                report.queries,
                report.dispatches,
                report.audit_violations.len()
            );
            println!("dispatches per case (none, 1..6): {:?}", report.case_counts);
        }
        Err(cex) => {
            println!("disagreement:\n{cex}");
            std::process::exit(1);
        }
    }
}

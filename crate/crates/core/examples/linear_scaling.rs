//! Running time of `equals` on (abcd)^k against (badc)^k as k doubles.
//!
//! `cargo run --release --example linear_scaling`

use small_overlap::bench::{bench_equals, doubling_ratios, linear_fit};
use small_overlap::{Presentation, Solver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres: Presentation = "gens: a b c d\nrel: abcd = badc\n".parse()?;
    let solver = Solver::new(pres)?;
    let samples = bench_equals(&solver, 10_000, 7);
    println!("length\tns_per_query\tns_per_letter");
    for s in &samples {
        println!("{}\t{:.0}\t{:.1}", s.length, s.ns_per_query, s.ns_per_query / s.length as f64);
    }
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.length as f64, s.ns_per_query)).collect();
    let fit = linear_fit(&points);
    println!("slope {:.2} ns/letter, R^2 {:.4}", fit.slope, fit.r_squared);
    println!("doubling ratios {:?}", doubling_ratios(&samples).iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>());
    Ok(())
}

//! Recall against connectivity with exact range measurements, for both
//! algorithm modes. Prints the per-degree summary and the smallest degree
//! where each mode localizes at least 99% of the nodes.
//!
//! cargo run --release --example recall_sweep -- [trials]

use udgloc::harness::{recall_threshold, run_sweep_degree, summarize, ExperimentConfig};
use udgloc::localizer::Mode;

fn main() {
    let trials = std::env::args().nth(1).and_then(|t| t.parse().ok()).unwrap_or(20);
    let config = ExperimentConfig {
        p_list: vec![0.0],
        trials,
        ..ExperimentConfig::default()
    };
    let rows = run_sweep_degree(&config);
    let summary = summarize(&rows);
    println!("{:<11} {:>6} {:>9} {:>8}", "mode", "degree", "recall%", "std");
    for s in &summary {
        println!(
            "{:<11} {:>6} {:>9.2} {:>8.2}",
            s.mode, s.target_degree, s.mean_recall, s.std_recall
        );
    }
    for mode in [Mode::Violations, Mode::Pure] {
        match recall_threshold(&summary, mode, 99.0) {
            Some(d) => println!("{mode}: recall >= 99% from degree {d}"),
            None => println!("{mode}: never reaches 99%"),
        }
    }
}

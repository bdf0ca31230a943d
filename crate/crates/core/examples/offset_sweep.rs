//! Mean localization offset against noise magnitude: violations mode at
//! average degree 8, pure trilateration at average degree 15.
//!
//! cargo run --release --example offset_sweep -- [trials]

use udgloc::harness::{run_sweep_noise, summarize, ExperimentConfig};

fn main() {
    let trials = std::env::args().nth(1).and_then(|t| t.parse().ok()).unwrap_or(20);
    let config = ExperimentConfig {
        trials,
        ..ExperimentConfig::default()
    };
    let summary = summarize(&run_sweep_noise(&config));
    println!(
        "{:<11} {:>6} {:>5} {:>9} {:>10} {:>10}",
        "mode", "degree", "P", "recall%", "offset[m]", "std"
    );
    for s in &summary {
        println!(
            "{:<11} {:>6} {:>5} {:>9.2} {:>10.4} {:>10.4}",
            s.mode,
            s.target_degree,
            s.p,
            s.mean_recall,
            s.mean_offset.unwrap_or(f64::NAN),
            s.std_offset.unwrap_or(f64::NAN)
        );
    }
}

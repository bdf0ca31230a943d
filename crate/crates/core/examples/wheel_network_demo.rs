//! Glued wheels with exact and noisy ranges, the same runs the `wheel-demo`
//! subcommand writes to disk.
//!
//! cargo run --release --example wheel_network_demo -- [wheels]

use udgloc::harness::{run_wheel_demo, ExperimentConfig, WheelSpec};

fn main() -> udgloc::Result<()> {
    let wheel_count = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let config = ExperimentConfig {
        p_list: vec![1.0, 5.0, 10.0, 20.0],
        wheel: WheelSpec {
            wheel_count,
            ..WheelSpec::default()
        },
        ..ExperimentConfig::default()
    };
    let demo = run_wheel_demo(&config)?;
    println!("{} nodes, {} edges", demo.graph.len(), demo.graph.edge_count());
    for run in &demo.runs {
        let ranges = if run.noisy {
            format!("P={}", run.p)
        } else {
            "exact".into()
        };
        let offset = run.result.mean_offset.map_or("-".into(), |o| format!("{o:.4}"));
        println!(
            "{:<11} {ranges:<6} recall {:>6.2}%  offset {offset}",
            run.mode, run.result.recall_pct
        );
    }
    Ok(())
}

//! A single wheel: every rim node has exactly two rim neighbors plus the
//! hub, so plain trilateration stalls after the seed triangle while missing
//! edges resolve the whole wheel.
//!
//! cargo run --example wheel_localization

use udgloc::geometry::{distance, Point};
use udgloc::localizer::{localize_graph, AlgorithmConfig, Mode};
use udgloc::network::generate_wheel;

fn main() -> udgloc::Result<()> {
    let g = generate_wheel(6, 1.0, 0.8, Point::ORIGIN)?;
    println!("{} nodes, {} edges", g.len(), g.edge_count());
    for mode in [Mode::Violations, Mode::Pure] {
        let f = localize_graph(&g, &AlgorithmConfig::new(mode));
        println!("{mode}: {}/{} localized", f.len(), g.len());
        for r in &f.audit {
            let err = distance(r.position, g.position(r.node));
            println!(
                "  node {} by {:<11} anchors {:?} error {err:.1e}",
                r.node,
                r.method.as_str(),
                r.anchors
            );
        }
    }
    Ok(())
}

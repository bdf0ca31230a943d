//! Without anchors the formation lives in its own frame. Rigid alignment
//! (rotation, translation, optional reflection) recovers the true layout.
//!
//! cargo run --release --example relative_frame

use udgloc::localizer::{localize_graph, AlgorithmConfig, Mode, SeedPlacement};
use udgloc::metrics::{mean_offset, Align, RigidTransform};
use udgloc::network::generate_random_udg;

fn main() -> udgloc::Result<()> {
    let g = generate_random_udg(80, 40.0, 12.0, 11)?;
    let cfg = AlgorithmConfig::new(Mode::Violations).with_seed_placement(SeedPlacement::Relative);
    let f = localize_graph(&g, &cfg);
    println!("seeds {:?}, {} nodes placed", f.seeds(), f.len());

    let (est, truth): (Vec<_>, Vec<_>) = f.placements.iter().map(|&(id, p)| (p, g.position(id))).unzip();
    let fit = RigidTransform::fit(&est, &truth);
    println!(
        "reflection: {}, translation ({:.3}, {:.3})",
        fit.is_reflection(),
        fit.translation.x,
        fit.translation.y
    );
    for align in [Align::None, Align::Rigid] {
        println!(
            "{align:?}: mean offset {:.3e}",
            mean_offset(&f, &g, align).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

//! Deploys a random network at a target degree, stores it as JSON, reloads
//! it and localizes the noisy copy in both modes.
//!
//! cargo run --release --example random_deployment -- [degree] [P]

use udgloc::localizer::{localize_graph, replay_soundness, AlgorithmConfig, Mode};
use udgloc::metrics::{mean_offset, recall, Align};
use udgloc::network::{apply_noise, generate_random_udg, load_graph, save_graph, NoiseModel};

fn main() -> udgloc::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().ok());
    let degree = args.next().flatten().unwrap_or(10.0);
    let p = args.next().flatten().unwrap_or(5.0);

    let g = generate_random_udg(100, 100.0, degree, 42)?;
    let path = std::env::temp_dir().join("udgloc_random_deployment.json");
    save_graph(&g, &path)?;
    let g = load_graph(&path)?;
    println!(
        "theta = {:.3}, average degree = {:.2}, saved to {}",
        g.theta(),
        g.average_degree(),
        path.display()
    );

    let measured = apply_noise(&g, &NoiseModel::new(p, 42))?;
    for mode in [Mode::Violations, Mode::Pure] {
        let f = localize_graph(&measured, &AlgorithmConfig::new(mode).with_p(p));
        let offset = mean_offset(&f, &g, Align::None).unwrap_or(f64::NAN);
        println!("{mode:<10} recall {:>6.2}%  mean offset {offset:.4}", recall(&f, &g));
        if mode == Mode::Violations && p == 0.0 {
            replay_soundness(&f, &g).expect("exact ranges never produce a violation");
        }
    }
    Ok(())
}

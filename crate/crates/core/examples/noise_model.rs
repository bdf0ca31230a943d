//! Perturbs every edge of a dense deployment and compares the sample
//! statistics of the range error with the model.
//!
//! cargo run --release --example noise_model -- [P]

use udgloc::network::{apply_noise, f_theta, generate_random_udg, NoiseModel, NoiseSpread, WsnGraph};

fn main() -> udgloc::Result<()> {
    let p: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10.0);
    let theta = 10.0;
    let deployed = generate_random_udg(600, 60.0, 40.0, 99)?;
    let clean = WsnGraph::from_positions(deployed.positions().to_vec(), theta)?;

    println!("theta = {theta}, P = {p}, edges = {}", clean.edge_count());
    println!("model mean f(theta) = {:.6}", f_theta(theta)?);
    for spread in [NoiseSpread::StdDev, NoiseSpread::Variance] {
        let model = NoiseModel::new(p, 2024).with_spread(spread);
        let noisy = apply_noise(&clean, &model)?;
        let eps: Vec<f64> = noisy.edges().zip(clean.edges()).map(|(m, t)| m.2 - t.2).collect();
        let n = eps.len() as f64;
        let mean = eps.iter().sum::<f64>() / n;
        let sd = (eps.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        println!(
            "{spread:?}: sample mean {mean:.6}, sample sd {sd:.6}, model sd {:.6}",
            model.std_dev()
        );
    }
    Ok(())
}

//! Range measurement error model fitted to RSSI ranging data.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::WsnGraph;
use crate::error::{Error, Result};

/// Smallest measured distance a noisy edge may carry.
pub const MIN_DELTA: f64 = 1e-9;

/// RNG stream reserved for measurement noise; deployments use stream 0.
pub(crate) const NOISE_STREAM: u64 = 1;

/// Mean ranging bias for sensing range `theta`: `0.022 ln(1 + theta) - 0.038`.
pub fn f_theta(theta: f64) -> Result<f64> {
    if !theta.is_finite() || theta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sensing range must be finite and non-negative, got {theta}"
        )));
    }
    Ok(0.022 * theta.ln_1p() - 0.038)
}

/// How the second parameter of `N(f(theta), P/100)` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseSpread {
    /// `P/100` is the standard deviation in meters.
    #[default]
    StdDev,
    /// `P/100` is the variance in square meters.
    Variance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Error magnitude `P`, a percentage.
    pub p_magnitude: f64,
    pub seed: u64,
    pub spread: NoiseSpread,
}

impl NoiseModel {
    pub fn new(p_magnitude: f64, seed: u64) -> Self {
        Self {
            p_magnitude,
            seed,
            spread: NoiseSpread::StdDev,
        }
    }

    pub fn with_spread(mut self, spread: NoiseSpread) -> Self {
        self.spread = spread;
        self
    }

    pub fn std_dev(&self) -> f64 {
        let scale = self.p_magnitude / 100.0;
        match self.spread {
            NoiseSpread::StdDev => scale,
            NoiseSpread::Variance => scale.sqrt(),
        }
    }
}

/// Replaces every measured distance with `true_distance + eps`, where `eps`
/// is drawn once per unordered edge (in edge order) from a Gaussian with mean
/// `f_theta(theta)` and the model's spread. Results are clamped to
/// [`MIN_DELTA`].
pub fn apply_noise(graph: &WsnGraph, model: &NoiseModel) -> Result<WsnGraph> {
    if !model.p_magnitude.is_finite() || model.p_magnitude < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise magnitude must be non-negative, got {}",
            model.p_magnitude
        )));
    }
    let mean = f_theta(graph.theta())?;
    let sd = model.std_dev();
    let normal = Normal::new(mean, sd).map_err(|e| Error::InvalidParameter(format!("noise distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    rng.set_stream(NOISE_STREAM);
    Ok(graph.reweighted(|_, _, actual| {
        let eps = if sd == 0.0 { mean } else { normal.sample(&mut rng) };
        (actual + eps).max(MIN_DELTA)
    }))
}

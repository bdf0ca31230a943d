//! Seeded Monte-Carlo experiments: recall against connectivity, offset
//! against noise magnitude, and the wheel network demonstration.
//!
//! Every trial is a pure function of its [`TrialSpec`], so trials run on the
//! rayon pool and are collected back in spec order; output bytes never
//! depend on scheduling.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::localizer::{localize_graph, AlgorithmConfig, Formation, Mode, SeedPlacement};
use crate::metrics::{mean_offset, recall, Align, TrialResult};
use crate::network::{apply_noise, generate_random_udg, generate_wheel_network, NoiseModel, NoiseSpread, WsnGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    SweepDegree,
    SweepNoise,
    WheelDemo,
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WheelSpec {
    pub wheel_count: usize,
    pub k_rim: usize,
    pub theta: f64,
    pub rim_radius: f64,
}

impl Default for WheelSpec {
    fn default() -> Self {
        Self {
            wheel_count: 4,
            k_rim: 6,
            theta: 1.0,
            rim_radius: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub area_side: f64,
    /// Target average degrees for the connectivity sweep.
    pub degrees: Vec<f64>,
    /// Error magnitudes `P` in percent.
    pub p_list: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub modes: Vec<Mode>,
    /// Connectivity used by the noise sweep in violations mode.
    pub violations_degree: f64,
    /// Connectivity used by the noise sweep in pure mode.
    pub pure_degree: f64,
    pub seed_placement: SeedPlacement,
    pub align: Align,
    pub triple_cap: Option<usize>,
    pub spread: NoiseSpread,
    pub wheel: WheelSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 100,
            area_side: 100.0,
            degrees: (4..=18).map(f64::from).collect(),
            p_list: vec![1.0, 5.0, 10.0, 20.0],
            trials: 20,
            base_seed: 7,
            modes: vec![Mode::Violations, Mode::Pure],
            violations_degree: 8.0,
            pure_degree: 15.0,
            seed_placement: SeedPlacement::Anchored,
            align: Align::None,
            triple_cap: None,
            spread: NoiseSpread::StdDev,
            wheel: WheelSpec::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn algorithm(&self, mode: Mode, p: f64) -> AlgorithmConfig {
        AlgorithmConfig::new(mode)
            .with_p(p)
            .with_seed_placement(self.seed_placement)
            .with_triple_cap(self.triple_cap)
    }

    fn modes_sorted(&self) -> Vec<Mode> {
        let mut modes = self.modes.clone();
        modes.sort();
        modes.dedup();
        modes
    }
}

/// Seed of trial `index`: `base ^ index`.
pub fn trial_seed(base_seed: u64, index: usize) -> u64 {
    base_seed ^ index as u64
}

/// Everything needed to replay one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub mode: Mode,
    pub target_degree: f64,
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    /// Whether measured distances go through the noise model. When false
    /// the graph keeps exact distances regardless of `p`.
    pub noisy: bool,
}

pub struct TrialOutcome {
    pub spec: TrialSpec,
    pub graph: WsnGraph,
    pub formation: Formation,
    pub result: TrialResult,
}

/// Connectivity sweep trials, ordered by (mode, degree, p, trial). Zero
/// magnitude means exact measurements here.
pub fn degree_sweep_specs(config: &ExperimentConfig) -> Vec<TrialSpec> {
    let mut specs = Vec::new();
    for mode in config.modes_sorted() {
        for &target_degree in &config.degrees {
            for &p in &config.p_list {
                for trial in 0..config.trials {
                    specs.push(TrialSpec {
                        mode,
                        target_degree,
                        p,
                        trial,
                        seed: trial_seed(config.base_seed, trial),
                        noisy: p > 0.0,
                    });
                }
            }
        }
    }
    specs
}

/// Noise sweep trials, ordered by (mode, p, trial). Every trial applies the
/// noise model, so zero magnitude still carries the `f(theta)` bias.
pub fn noise_sweep_specs(config: &ExperimentConfig) -> Vec<TrialSpec> {
    let mut specs = Vec::new();
    for mode in config.modes_sorted() {
        let target_degree = match mode {
            Mode::Violations => config.violations_degree,
            Mode::Pure => config.pure_degree,
        };
        for &p in &config.p_list {
            for trial in 0..config.trials {
                specs.push(TrialSpec {
                    mode,
                    target_degree,
                    p,
                    trial,
                    seed: trial_seed(config.base_seed, trial),
                    noisy: true,
                });
            }
        }
    }
    specs
}

/// Generates, perturbs and localizes one deployment.
pub fn run_trial(config: &ExperimentConfig, spec: &TrialSpec) -> Result<TrialOutcome> {
    let clean = generate_random_udg(config.n, config.area_side, spec.target_degree, spec.seed)?;
    let graph = if spec.noisy {
        let model = NoiseModel::new(spec.p, spec.seed).with_spread(config.spread);
        apply_noise(&clean, &model)?
    } else {
        clean
    };
    let formation = localize_graph(&graph, &config.algorithm(spec.mode, spec.p));
    let result = TrialResult {
        mode: spec.mode,
        n: graph.len(),
        avg_degree: graph.average_degree(),
        p_magnitude: spec.p,
        trial: spec.trial,
        recall_pct: recall(&formation, &graph),
        mean_offset: mean_offset(&formation, &graph, config.align),
        rng_seed: spec.seed,
    };
    Ok(TrialOutcome {
        spec: *spec,
        graph,
        formation,
        result,
    })
}

/// Runs `specs` in parallel, calling `inspect` on every successful outcome.
/// Failed trials are logged and left out.
pub fn run_specs<F>(config: &ExperimentConfig, specs: &[TrialSpec], inspect: F) -> Vec<(TrialSpec, TrialResult)>
where
    F: Fn(&TrialOutcome) + Sync,
{
    specs
        .par_iter()
        .filter_map(|spec| match run_trial(config, spec) {
            Ok(outcome) => {
                inspect(&outcome);
                log::debug!(
                    "{} degree {} p {} trial {}: recall {:.1}%",
                    spec.mode,
                    spec.target_degree,
                    spec.p,
                    spec.trial,
                    outcome.result.recall_pct
                );
                Some((outcome.spec, outcome.result))
            }
            Err(e) => {
                log::warn!("trial {} (seed {}) skipped: {e}", spec.trial, spec.seed);
                None
            }
        })
        .collect()
}

pub fn run_sweep_degree(config: &ExperimentConfig) -> Vec<(TrialSpec, TrialResult)> {
    run_specs(config, &degree_sweep_specs(config), |_| {})
}

pub fn run_sweep_noise(config: &ExperimentConfig) -> Vec<(TrialSpec, TrialResult)> {
    run_specs(config, &noise_sweep_specs(config), |_| {})
}

/// Mean and sample standard deviation over the trials of one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub mode: Mode,
    pub target_degree: f64,
    pub p: f64,
    pub trials: usize,
    pub mean_recall: f64,
    pub std_recall: f64,
    pub mean_offset: Option<f64>,
    pub std_offset: Option<f64>,
}

fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Some((mean, std))
}

/// Groups trial rows by (mode, target degree, p), preserving first-seen order.
pub fn summarize(rows: &[(TrialSpec, TrialResult)]) -> Vec<SummaryRow> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<usize, Vec<&TrialResult>> = BTreeMap::new();
    for (spec, result) in rows {
        let key = (spec.mode, spec.target_degree.to_bits(), spec.p.to_bits());
        let slot = match order.iter().position(|k| *k == key) {
            Some(slot) => slot,
            None => {
                order.push(key);
                order.len() - 1
            }
        };
        groups.entry(slot).or_default().push(result);
    }
    groups
        .into_iter()
        .map(|(slot, results)| {
            let (mode, degree, p) = order[slot];
            let recalls: Vec<f64> = results.iter().map(|r| r.recall_pct).collect();
            let offsets: Vec<f64> = results.iter().filter_map(|r| r.mean_offset).collect();
            let (mean_recall, std_recall) = mean_std(&recalls).unwrap_or((0.0, 0.0));
            let offset = mean_std(&offsets);
            SummaryRow {
                mode,
                target_degree: f64::from_bits(degree),
                p: f64::from_bits(p),
                trials: results.len(),
                mean_recall,
                std_recall,
                mean_offset: offset.map(|o| o.0),
                std_offset: offset.map(|o| o.1),
            }
        })
        .collect()
}

/// Writes `mode,avg_degree,p,trial,recall_pct,mean_offset,seed` rows.
pub fn write_trials_csv<W: Write>(rows: &[(TrialSpec, TrialResult)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mode", "avg_degree", "p", "trial", "recall_pct", "mean_offset", "seed"])?;
    for (_, r) in rows {
        w.write_record([
            r.mode.as_str().to_string(),
            r.avg_degree.to_string(),
            r.p_magnitude.to_string(),
            r.trial.to_string(),
            r.recall_pct.to_string(),
            r.mean_offset.map(|o| o.to_string()).unwrap_or_default(),
            r.rng_seed.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "mode",
        "target_degree",
        "p",
        "trials",
        "mean_recall",
        "std_recall",
        "mean_offset",
        "std_offset",
    ])?;
    for r in rows {
        w.write_record([
            r.mode.as_str().to_string(),
            r.target_degree.to_string(),
            r.p.to_string(),
            r.trials.to_string(),
            r.mean_recall.to_string(),
            r.std_recall.to_string(),
            opt(r.mean_offset),
            opt(r.std_offset),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Smallest target degree whose mean recall reaches `threshold_pct`.
pub fn recall_threshold(summary: &[SummaryRow], mode: Mode, threshold_pct: f64) -> Option<f64> {
    summary
        .iter()
        .filter(|r| r.mode == mode && r.mean_recall >= threshold_pct)
        .map(|r| r.target_degree)
        .min_by(f64::total_cmp)
}

/// Parses `A:B[:STEP]` into the inclusive list `A, A+STEP, ..., <= B`.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("expected A:B[:STEP], got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, end, step) = match parts[..] {
        [a, b] => (a, b, 1.0),
        [a, b, s] => (a, b, s),
        _ => return Err(bad()),
    };
    if !start.is_finite() || !end.is_finite() || start > end || step.is_nan() || step <= 0.0 {
        return Err(bad());
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

/// Parses a comma separated list of reals.
pub fn parse_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("not a number: {p:?}")))
        })
        .collect()
}

/// One localization of the wheel network.
#[derive(Debug, Clone)]
pub struct WheelRun {
    pub mode: Mode,
    pub p: f64,
    pub noisy: bool,
    pub formation: Formation,
    pub result: TrialResult,
}

#[derive(Debug, Clone)]
pub struct WheelDemo {
    pub graph: WsnGraph,
    pub runs: Vec<WheelRun>,
}

/// Localizes a composite wheel network with exact distances in both modes,
/// then with violations enabled at every magnitude in `p_list`.
pub fn run_wheel_demo(config: &ExperimentConfig) -> Result<WheelDemo> {
    let spec = &config.wheel;
    let seed = config.base_seed;
    let network = generate_wheel_network(spec.wheel_count, spec.k_rim, spec.theta, spec.rim_radius, seed)?;
    let graph = network.graph;

    let mut plan = vec![(Mode::Violations, 0.0, false), (Mode::Pure, 0.0, false)];
    plan.extend(config.p_list.iter().map(|&p| (Mode::Violations, p, true)));

    let runs = plan
        .into_par_iter()
        .map(|(mode, p, noisy)| {
            let measured = if noisy {
                apply_noise(&graph, &NoiseModel::new(p, seed).with_spread(config.spread))?
            } else {
                graph.clone()
            };
            let formation = localize_graph(&measured, &config.algorithm(mode, p));
            let result = TrialResult {
                mode,
                n: graph.len(),
                avg_degree: graph.average_degree(),
                p_magnitude: p,
                trial: 0,
                recall_pct: recall(&formation, &graph),
                mean_offset: mean_offset(&formation, &graph, config.align),
                rng_seed: seed,
            };
            Ok(WheelRun {
                mode,
                p,
                noisy,
                formation,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WheelDemo { graph, runs })
}

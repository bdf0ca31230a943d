use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use udgloc::error::{Error, Result};
use udgloc::geometry::Point;
use udgloc::harness::{
    parse_list, parse_range, run_sweep_degree, run_sweep_noise, run_wheel_demo, summarize, write_summary_csv,
    write_trials_csv, ExperimentConfig, TrialSpec, WheelSpec,
};
use udgloc::localizer::{localize_graph, replay_soundness, AlgorithmConfig, FormationFile, Mode, SeedPlacement};
use udgloc::metrics::{mean_offset, recall, Align, TrialResult};
use udgloc::network::{
    apply_noise, generate_random_udg, generate_wheel, generate_wheel_network, load_graph, save_graph, NoiseModel,
    NoiseSpread, WsnGraph,
};

#[derive(Parser)]
#[command(
    name = "udgloc",
    version,
    about = "Sensor network localization with unit disk graph violations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random deployment or a wheel network as a graph file.
    Generate(GenerateArgs),
    /// Localize a graph file and write the formation.
    Localize(LocalizeArgs),
    /// Recall against average degree.
    SweepDegree(SweepDegreeArgs),
    /// Offset against noise magnitude.
    SweepNoise(SweepNoiseArgs),
    /// Localize a composite wheel network at several noise magnitudes.
    WheelDemo(WheelDemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Violations,
    Pure,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Violations => Mode::Violations,
            ModeArg::Pure => Mode::Pure,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedPlacementArg {
    Anchored,
    Relative,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlignArg {
    None,
    Rigid,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpreadArg {
    Std,
    Variance,
}

#[derive(Args)]
struct AlgorithmArgs {
    #[arg(long = "seed-placement", value_enum, default_value = "anchored")]
    seed_placement: SeedPlacementArg,
    #[arg(long = "triple-cap")]
    triple_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "none")]
    align: AlignArg,
}

impl AlgorithmArgs {
    fn seed_placement(&self) -> SeedPlacement {
        match self.seed_placement {
            SeedPlacementArg::Anchored => SeedPlacement::Anchored,
            SeedPlacementArg::Relative => SeedPlacement::Relative,
        }
    }

    fn align(&self) -> Align {
        match self.align {
            AlignArg::None => Align::None,
            AlignArg::Rigid => Align::Rigid,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Target average degree of a random deployment.
    #[arg(long, default_value_t = 8.0)]
    degree: f64,
    #[arg(long, default_value_t = 100.0)]
    area: f64,
    /// Build a wheel with this many rim nodes instead of a random deployment.
    #[arg(long)]
    wheel: Option<usize>,
    #[arg(long, default_value_t = 1)]
    wheels: usize,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.8)]
    rim: f64,
    /// Apply the noise model with this magnitude (percent).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value = "std")]
    spread: SpreadArg,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LocalizeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "violations")]
    mode: ModeArg,
    /// σ band in percent.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[command(flatten)]
    algorithm: AlgorithmArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the placement audit as JSON lines.
    #[arg(long)]
    audit: Option<PathBuf>,
}

#[derive(Args)]
struct SweepCommon {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 100.0)]
    area: f64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Restrict to one mode; both run by default.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "std")]
    spread: SpreadArg,
    #[command(flatten)]
    algorithm: AlgorithmArgs,
    /// Per-trial CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Mean and sample std per sweep point.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct SweepDegreeArgs {
    #[arg(long, default_value = "4:18")]
    degrees: String,
    #[arg(long, default_value = "0")]
    plist: String,
    #[command(flatten)]
    common: SweepCommon,
}

#[derive(Args)]
struct SweepNoiseArgs {
    #[arg(long, default_value = "1,5,10,20")]
    plist: String,
    #[arg(long = "violations-degree", default_value_t = 8.0)]
    violations_degree: f64,
    #[arg(long = "pure-degree", default_value_t = 15.0)]
    pure_degree: f64,
    #[command(flatten)]
    common: SweepCommon,
}

#[derive(Args)]
struct WheelDemoArgs {
    #[arg(long, default_value_t = 4)]
    wheels: usize,
    #[arg(long, default_value_t = 6)]
    wheel: usize,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.8)]
    rim: f64,
    #[arg(long, default_value = "1,5,10,20")]
    plist: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "none")]
    align: AlignArg,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

fn spread(arg: SpreadArg) -> NoiseSpread {
    match arg {
        SpreadArg::Std => NoiseSpread::StdDev,
        SpreadArg::Variance => NoiseSpread::Variance,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn generate(args: GenerateArgs) -> Result<()> {
    let graph = match args.wheel {
        Some(k) if args.wheels <= 1 => generate_wheel(k, args.theta, args.rim, Point::ORIGIN)?,
        Some(k) => generate_wheel_network(args.wheels, k, args.theta, args.rim, args.seed)?.graph,
        None => generate_random_udg(args.n, args.area, args.degree, args.seed)?,
    };
    let graph = match args.p {
        Some(p) => apply_noise(&graph, &NoiseModel::new(p, args.seed).with_spread(spread(args.spread)))?,
        None => graph,
    };
    log::info!(
        "{} nodes, {} edges, average degree {:.3}, theta {}",
        graph.len(),
        graph.edge_count(),
        graph.average_degree(),
        graph.theta()
    );
    match &args.out {
        Some(path) => save_graph(&graph, path),
        None => {
            println!("{}", graph.to_json()?);
            Ok(())
        }
    }
}

fn localize(args: LocalizeArgs) -> Result<()> {
    let graph: WsnGraph = load_graph(&args.graph)?;
    let config = AlgorithmConfig::new(args.mode.into())
        .with_p(args.p)
        .with_seed_placement(args.algorithm.seed_placement())
        .with_triple_cap(args.algorithm.triple_cap);
    let formation = localize_graph(&graph, &config);
    if let Err(e) = replay_soundness(&formation, &graph) {
        log::warn!("audit replay: {e}");
    }
    let offset = mean_offset(&formation, &graph, args.algorithm.align());
    eprintln!(
        "localized {}/{} ({:.2}%), mean offset {}",
        formation.len(),
        graph.len(),
        recall(&formation, &graph),
        offset.map_or("n/a".to_string(), |o| format!("{o:.6}"))
    );
    let file = FormationFile::new(&formation, &graph);
    match &args.out {
        Some(path) => file.write(path)?,
        None => println!("{}", serde_json::to_string_pretty(&file)?),
    }
    if let Some(path) = &args.audit {
        formation.write_audit_log(create(path)?)?;
    }
    Ok(())
}

fn experiment(common: &SweepCommon, p_list: Vec<f64>) -> ExperimentConfig {
    ExperimentConfig {
        n: common.n,
        area_side: common.area,
        p_list,
        trials: common.trials,
        base_seed: common.seed,
        modes: match common.mode {
            Some(m) => vec![m.into()],
            None => vec![Mode::Violations, Mode::Pure],
        },
        seed_placement: common.algorithm.seed_placement(),
        align: common.algorithm.align(),
        triple_cap: common.algorithm.triple_cap,
        spread: spread(common.spread),
        ..ExperimentConfig::default()
    }
}

fn emit(common: &SweepCommon, rows: &[(TrialSpec, TrialResult)]) -> Result<()> {
    write_trials_csv(rows, output(common.out.as_deref())?)?;
    if let Some(path) = &common.summary {
        write_summary_csv(&summarize(rows), create(path)?)?;
    }
    Ok(())
}

fn sweep_degree(args: SweepDegreeArgs) -> Result<()> {
    let mut config = experiment(&args.common, parse_list(&args.plist)?);
    config.degrees = parse_range(&args.degrees)?;
    if config.trials == 0 {
        return Err(Error::InvalidParameter("--trials must be at least 1".into()));
    }
    let rows = run_sweep_degree(&config);
    emit(&args.common, &rows)
}

fn sweep_noise(args: SweepNoiseArgs) -> Result<()> {
    let mut config = experiment(&args.common, parse_list(&args.plist)?);
    config.violations_degree = args.violations_degree;
    config.pure_degree = args.pure_degree;
    if config.trials == 0 {
        return Err(Error::InvalidParameter("--trials must be at least 1".into()));
    }
    let rows = run_sweep_noise(&config);
    emit(&args.common, &rows)
}

fn wheel_demo(args: WheelDemoArgs) -> Result<()> {
    let config = ExperimentConfig {
        p_list: parse_list(&args.plist)?,
        base_seed: args.seed,
        align: match args.align {
            AlignArg::None => Align::None,
            AlignArg::Rigid => Align::Rigid,
        },
        wheel: WheelSpec {
            wheel_count: args.wheels,
            k_rim: args.wheel,
            theta: args.theta,
            rim_radius: args.rim,
        },
        ..ExperimentConfig::default()
    };
    let demo = run_wheel_demo(&config)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Error::Io {
        path: args.out.clone(),
        source: e,
    })?;
    save_graph(&demo.graph, args.out.join("wheel_graph.json"))?;
    let mut rows = Vec::new();
    for run in &demo.runs {
        let tag = if run.noisy {
            format!("p{}", run.p)
        } else {
            "exact".to_string()
        };
        let stem = format!("formation_{}_{tag}", run.mode);
        FormationFile::new(&run.formation, &demo.graph).write(args.out.join(format!("{stem}.json")))?;
        run.formation
            .write_audit_log(create(&args.out.join(format!("{stem}.audit.jsonl")))?)?;
        eprintln!(
            "{:<10} {:<6} recall {:>6.2}%  offset {}",
            run.mode,
            tag,
            run.result.recall_pct,
            run.result.mean_offset.map_or("n/a".to_string(), |o| format!("{o:.4}"))
        );
        let spec = TrialSpec {
            mode: run.mode,
            target_degree: demo.graph.average_degree(),
            p: run.p,
            trial: 0,
            seed: args.seed,
            noisy: run.noisy,
        };
        rows.push((spec, run.result.clone()));
    }
    write_trials_csv(&rows, create(&args.out.join("summary.csv"))?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("UDGLOC_LOG", "error")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Localize(a) => localize(a),
        Command::SweepDegree(a) => sweep_degree(a),
        Command::SweepNoise(a) => sweep_noise(a),
        Command::WheelDemo(a) => wheel_demo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

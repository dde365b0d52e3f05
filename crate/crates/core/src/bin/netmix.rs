//! `netmix` command-line interface.
//!
//! Exit codes: 0 success or documented skip, 1 output failure, 2 bad input
//! data, 64 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netmix::experiment::{self, SuiteOptions};
use netmix::graph::{builtin_zachary, read_graph_file, zachary_factions, Graph};
use netmix::metrics::{parse_label_csv, write_label_csv};
use netmix::report::{memberships_csv, to_dot, Agreement, ChainFile, ExperimentReport};
use netmix::simulate::{generate_sbm, preset, SbmSpec};
use netmix::{ClampPolicy, Error, Preset, RatioMode, SamplerConfig};

const EXIT_OUTPUT: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Output(_) => EXIT_OUTPUT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Output(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::InvalidConfig(_) | Error::UnknownPreset { .. } => {
                Failure::Usage(err.to_string())
            }
            _ => Failure::Data(err.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Parser)]
#[command(
    name = "netmix",
    version,
    about = "Mixed-membership clustering of social networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample memberships for a graph and write the posterior summary.
    Cluster(ClusterArgs),
    /// Generate a planted-partition SBM graph and its truth labels.
    Simulate(SimulateArgs),
    /// Compare two `node,community` label files.
    Eval(EvalArgs),
    /// Reproduce one of the reference experiments.
    Experiment(ExperimentArgs),
}

#[derive(Args, Clone)]
struct ChainArgs {
    /// Dirichlet prior: one value for a symmetric prior or a comma list.
    #[arg(long, value_delimiter = ',', default_value = "1.0")]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    thin: usize,
    /// Seed for the chain; drawn from entropy and printed when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Published)]
    ratio_mode: ModeArg,
    /// Link probabilities are clamped to [epsilon, 1 - epsilon].
    #[arg(long, default_value_t = ClampPolicy::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Align retained states to the running mean before averaging.
    #[arg(long)]
    relabel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Published,
    Corrected,
}

impl From<ModeArg> for RatioMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Published => RatioMode::Published,
            ModeArg::Corrected => RatioMode::Corrected,
        }
    }
}

#[derive(Args)]
struct ClusterArgs {
    /// Edge list or adjacency CSV (`.csv`), or `zachary` for the bundled data.
    #[arg(long)]
    graph: String,
    #[arg(long, short = 'k', default_value_t = 2)]
    communities: usize,
    #[arg(long, default_value_t = experiment::ZACHARY_BURNIN)]
    burnin: usize,
    #[arg(long, default_value_t = experiment::ZACHARY_SAMPLES)]
    samples: usize,
    #[command(flatten)]
    chain: ChainArgs,
    /// Optional `node,community` truth file to score against.
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Write a Graphviz drawing colored by hard community.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Csv,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, conflicts_with_all = ["sizes", "within", "cross"])]
    preset: Option<String>,
    /// Block sizes, comma-separated.
    #[arg(long, value_delimiter = ',', requires_all = ["within", "cross"])]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    within: Option<f64>,
    #[arg(long)]
    cross: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// File name stem; defaults to the preset name or `sbm`.
    #[arg(long)]
    prefix: Option<String>,
    /// `csv` writes an adjacency matrix, which keeps isolated nodes.
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    truth: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    Zachary,
    Dolphin,
    SbmSuite,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: ExperimentName,
    /// Burn-in sweeps; defaults to 5000 (zachary), 1000 (dolphin, sbm-suite).
    #[arg(long)]
    burnin: Option<usize>,
    /// Retained sweeps; defaults to 10000 (zachary), 5000 (dolphin), 2000 (sbm-suite).
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    chain: ChainArgs,
    /// Dolphin edge list.
    #[arg(long)]
    data: Option<PathBuf>,
    /// `node,community` split to score the dolphin run against.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Repetitions per preset for sbm-suite.
    #[arg(long, default_value_t = experiment::SUITE_REPS)]
    reps: usize,
    /// Comma-separated presets for sbm-suite.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "sbm1,sbm2,sbm3,sbm4,sbm5"
    )]
    presets: Vec<String>,
    /// Skip the modularity baseline in sbm-suite.
    #[arg(long)]
    no_baseline: bool,
    /// Write the full report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write memberships.csv, labels.csv and chain.json here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Cluster(args) => cmd_cluster(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn sampler_config(
    h: usize,
    burnin: usize,
    samples: usize,
    chain: &ChainArgs,
) -> CliResult<SamplerConfig> {
    if h < 2 {
        return Err(Failure::Usage(format!(
            "--communities must be at least 2, got {h}"
        )));
    }
    let alpha = match chain.alpha.as_slice() {
        [a] => vec![*a; h],
        list if list.len() == h => list.to_vec(),
        list => {
            return Err(Failure::Usage(format!(
                "--alpha needs 1 or {h} values, got {}",
                list.len()
            )))
        }
    };
    let mut cfg = SamplerConfig::new(h)
        .with_alpha(alpha)
        .with_schedule(burnin, samples)
        .with_seed(resolve_seed(chain.seed))
        .with_ratio_mode(chain.ratio_mode.into());
    cfg.thin = chain.thin;
    cfg.relabel = chain.relabel;
    cfg.clamp = ClampPolicy::new(chain.epsilon)?;
    cfg.validate()?;
    Ok(cfg)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| Failure::Output(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| Failure::Output(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_graph(spec: &str) -> CliResult<Graph> {
    if spec == "zachary" {
        return Ok(builtin_zachary());
    }
    Ok(read_graph_file(Path::new(spec))?)
}

fn write_chain_outputs(
    dir: &Path,
    g: &Graph,
    cfg: &SamplerConfig,
    report: &ExperimentReport,
) -> CliResult<()> {
    let summary = report
        .summary
        .as_ref()
        .expect("completed runs carry a summary");
    write_file(
        &dir.join("memberships.csv"),
        &memberships_csv(g, &summary.mean, &summary.hard_labels),
    )?;
    write_file(
        &dir.join("labels.csv"),
        &write_label_csv(g.labels(), &summary.hard_labels),
    )?;
    let chain = ChainFile::new(cfg, summary, report.wall_seconds);
    let json = serde_json::to_string_pretty(&chain).expect("chain file serializes");
    write_file(&dir.join("chain.json"), &json)
}

fn cmd_cluster(args: ClusterArgs) -> CliResult<()> {
    let cfg = sampler_config(args.communities, args.burnin, args.samples, &args.chain)?;
    let g = load_graph(&args.graph)?;
    let truth = match &args.truth {
        Some(p) => Some(experiment::truth_for_graph(
            &g,
            &parse_label_csv(&read_text(p)?)?,
        )?),
        None if args.graph == "zachary" => Some(zachary_factions()),
        None => None,
    };
    let report = experiment::cluster(&args.graph, &g, &cfg, truth.as_deref())?;
    write_chain_outputs(&args.out_dir, &g, &cfg, &report)?;
    if let Some(dot) = &args.dot {
        let labels = &report.summary.as_ref().expect("summary").hard_labels;
        write_file(dot, &to_dot(&g, labels))?;
    }
    print!("{}", report.render());
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let (spec, stem) = match (&args.preset, &args.sizes) {
        (Some(name), _) => (preset(name)?, name.to_ascii_lowercase()),
        (None, Some(sizes)) => (
            SbmSpec::planted(
                sizes.clone(),
                args.within.expect("clap enforces --within"),
                args.cross.expect("clap enforces --cross"),
            )?,
            "sbm".to_owned(),
        ),
        (None, None) => {
            return Err(Failure::Usage(
                "either --preset or --sizes/--within/--cross is required".into(),
            ))
        }
    };
    let stem = args.prefix.unwrap_or(stem);
    let seed = resolve_seed(args.seed);
    let planted = generate_sbm(&spec, seed)?;
    let g = &planted.graph;
    let graph_path = match args.format {
        GraphFormat::Edgelist => {
            let isolated = (0..g.n()).filter(|&i| g.degree(i) == 0).count();
            if isolated > 0 {
                eprintln!(
                    "warning: {isolated} isolated node(s) cannot appear in an edge list; use --format csv to keep them"
                );
            }
            let path = args.out_dir.join(format!("{stem}.edges.txt"));
            write_file(&path, &g.to_edge_list())?;
            path
        }
        GraphFormat::Csv => {
            let path = args.out_dir.join(format!("{stem}.adj.csv"));
            write_file(&path, &g.to_adjacency_csv())?;
            path
        }
    };
    let truth_path = args.out_dir.join(format!("{stem}.truth.csv"));
    write_file(&truth_path, &write_label_csv(g.labels(), &planted.truth))?;
    println!("n: {}", g.n());
    println!("m: {}", g.m());
    println!("graph: {}", graph_path.display());
    println!("truth: {}", truth_path.display());
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    let pred = parse_label_csv(&read_text(&args.pred)?)?;
    let truth = parse_label_csv(&read_text(&args.truth)?)?;
    let truth_map: std::collections::HashMap<&str, usize> =
        truth.iter().map(|(n, c)| (n.as_str(), *c)).collect();
    let pred_nodes: std::collections::HashSet<&str> =
        pred.iter().map(|(n, _)| n.as_str()).collect();
    let mut missing: Vec<String> = pred
        .iter()
        .filter(|(n, _)| !truth_map.contains_key(n.as_str()))
        .map(|(n, _)| format!("{n} (absent from truth)"))
        .collect();
    missing.extend(
        truth
            .iter()
            .filter(|(n, _)| !pred_nodes.contains(n.as_str()))
            .map(|(n, _)| format!("{n} (absent from pred)")),
    );
    if !missing.is_empty() {
        return Err(Failure::Data(format!(
            "node sets differ: {}",
            missing.join(", ")
        )));
    }
    let p: Vec<usize> = pred.iter().map(|(_, c)| *c).collect();
    let t: Vec<usize> = pred.iter().map(|(n, _)| truth_map[n.as_str()]).collect();
    let scores = Agreement::compute(&p, &t)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&scores).expect("scores serialize")
    );
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> CliResult<()> {
    match args.name {
        ExperimentName::Zachary | ExperimentName::Dolphin => {
            let zachary = matches!(args.name, ExperimentName::Zachary);
            let (burnin, samples) = if zachary {
                (experiment::ZACHARY_BURNIN, experiment::ZACHARY_SAMPLES)
            } else {
                (experiment::DOLPHIN_BURNIN, experiment::DOLPHIN_SAMPLES)
            };
            let burnin = args.burnin.unwrap_or(burnin);
            let samples = args.samples.unwrap_or(samples);
            let cfg = sampler_config(2, burnin, samples, &args.chain)?;
            let report = if zachary {
                experiment::zachary(&cfg)?
            } else {
                experiment::dolphin(args.data.as_deref(), args.truth.as_deref(), &cfg)?
            };
            if let Some(summary) = &report.summary {
                let g = if zachary {
                    builtin_zachary()
                } else {
                    read_graph_file(args.data.as_deref().expect("dolphin ran with data"))?
                };
                if let Some(dir) = &args.out_dir {
                    write_chain_outputs(dir, &g, &cfg, &report)?;
                }
                if let Some(dot) = &args.dot {
                    write_file(dot, &to_dot(&g, &summary.hard_labels))?;
                }
            }
            if let Some(path) = &args.report {
                let json = serde_json::to_string_pretty(&report).expect("report serializes");
                write_file(path, &json)?;
            }
            print!("{}", report.render());
            Ok(())
        }
        ExperimentName::SbmSuite => {
            let presets = args
                .presets
                .iter()
                .map(|p| p.parse::<Preset>())
                .collect::<Result<Vec<_>, _>>()?;
            let alpha = match args.chain.alpha.as_slice() {
                [a] => *a,
                _ => {
                    return Err(Failure::Usage(
                        "sbm-suite takes a single symmetric --alpha value".into(),
                    ))
                }
            };
            let opts = SuiteOptions {
                presets,
                reps: args.reps,
                burnin: args.burnin.unwrap_or(experiment::SUITE_BURNIN),
                samples: args.samples.unwrap_or(experiment::SUITE_SAMPLES),
                base_seed: resolve_seed(args.chain.seed),
                ratio_mode: args.chain.ratio_mode.into(),
                alpha,
                run_sampler: true,
                run_baseline: !args.no_baseline,
            };
            let report = experiment::sbm_suite(&opts)?;
            if let Some(path) = &args.report {
                let json = serde_json::to_string_pretty(&report).expect("report serializes");
                write_file(path, &json)?;
            }
            print!("{}", report.render_table());
            Ok(())
        }
    }
}

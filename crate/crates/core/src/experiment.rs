//! End-to-end experiment runners: the karate club, the dolphin network, and
//! the planted-partition benchmark suite.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::baseline::modularity_baseline;
use crate::error::{Error, Result};
use crate::graph::{builtin_zachary, read_graph_file, zachary_factions, Graph};
use crate::metrics::{ari, nmi, parse_label_csv};
use crate::report::{round4, ExperimentReport};
use crate::sampler::{run_chain, RatioMode, SamplerConfig};
use crate::simulate::{generate_sbm, Preset};

pub const ZACHARY_BURNIN: usize = 5000;
pub const ZACHARY_SAMPLES: usize = 10000;
pub const DOLPHIN_BURNIN: usize = 1000;
pub const DOLPHIN_SAMPLES: usize = 5000;
pub const SUITE_BURNIN: usize = 1000;
pub const SUITE_SAMPLES: usize = 2000;
pub const SUITE_REPS: usize = 30;

const DOLPHIN_NODES: usize = 62;
const DOLPHIN_EDGES: usize = 318;

/// Runs the sampler on `g` and wraps the result, timing the chain.
pub fn cluster(
    dataset: &str,
    g: &Graph,
    cfg: &SamplerConfig,
    truth: Option<&[usize]>,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let summary = run_chain(g, cfg)?;
    let wall = start.elapsed().as_secs_f64();
    ExperimentReport::from_chain(dataset, g, cfg, summary, truth, wall)
}

/// Zachary karate club against the observed faction split.
pub fn zachary(cfg: &SamplerConfig) -> Result<ExperimentReport> {
    let g = builtin_zachary();
    let truth = zachary_factions();
    cluster("zachary", &g, cfg, Some(&truth))
}

/// Aligns a `node,community` table to the node order of `g`.
pub fn truth_for_graph(g: &Graph, table: &[(String, usize)]) -> Result<Vec<usize>> {
    let mut truth = vec![None; g.n()];
    for (node, c) in table {
        if let Some(i) = g.index_of(node) {
            truth[i] = Some(*c);
        }
    }
    let missing: Vec<&str> = truth
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_none())
        .map(|(i, _)| g.label(i))
        .collect();
    if !missing.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "truth file lacks nodes: {}",
            missing.join(", ")
        )));
    }
    Ok(truth.into_iter().flatten().collect())
}

/// Dolphin network from a user-supplied edge list, optionally scored against
/// a `node,community` split. Without data the experiment is skipped.
pub fn dolphin(
    data: Option<&Path>,
    truth: Option<&Path>,
    cfg: &SamplerConfig,
) -> Result<ExperimentReport> {
    let Some(path) = data else {
        return Ok(ExperimentReport::skipped(
            "dolphin",
            "dolphin edge list not supplied (pass --data <edge list>)",
        ));
    };
    let g = read_graph_file(path)?;
    let truth = truth
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            truth_for_graph(&g, &parse_label_csv(&text)?)
        })
        .transpose()?;
    let mut report = cluster("dolphin", &g, cfg, truth.as_deref())?;
    if g.n() != DOLPHIN_NODES || g.m() != DOLPHIN_EDGES {
        report.notes.push(format!(
            "expected {DOLPHIN_NODES} nodes and {DOLPHIN_EDGES} edges, found {} and {}",
            g.n(),
            g.m()
        ));
    }
    if truth.is_some() {
        report.notes.push(
            "a boundary sub-community of about seven dolphins is the expected disagreement".into(),
        );
    }
    Ok(report)
}

/// Options for [`sbm_suite`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub presets: Vec<Preset>,
    pub reps: usize,
    pub burnin: usize,
    pub samples: usize,
    pub base_seed: u64,
    pub ratio_mode: RatioMode,
    /// Symmetric Dirichlet concentration for every community.
    pub alpha: f64,
    pub run_sampler: bool,
    pub run_baseline: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            presets: Preset::ALL.to_vec(),
            reps: SUITE_REPS,
            burnin: SUITE_BURNIN,
            samples: SUITE_SAMPLES,
            base_seed: 0,
            ratio_mode: RatioMode::Published,
            alpha: 1.0,
            run_sampler: true,
            run_baseline: true,
        }
    }
}

/// Scores of one repetition.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RepResult {
    pub rep: usize,
    pub graph_seed: u64,
    pub chain_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler_ari: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler_nmi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_ari: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_nmi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_communities: Option<usize>,
    /// Baseline labels, kept for structural checks; not serialized.
    #[serde(skip)]
    pub baseline_labels: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PresetResult {
    pub preset: String,
    pub reps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler_ari: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler_nmi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_ari: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_nmi: Option<f64>,
    pub runs: Vec<RepResult>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SuiteReport {
    pub burnin: usize,
    pub samples: usize,
    pub base_seed: u64,
    pub ratio_mode: String,
    pub nmi_normalization: &'static str,
    pub notes: Vec<String>,
    pub presets: Vec<PresetResult>,
}

/// SplitMix64 finalizer; decorrelates the chain stream from the graph
/// stream of the same repetition.
pub fn derive_seed(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_rep(preset: Preset, rep: usize, opts: &SuiteOptions) -> Result<RepResult> {
    let spec = preset.spec();
    let graph_seed = opts.base_seed.wrapping_add(rep as u64);
    let chain_seed = derive_seed(graph_seed);
    let planted = generate_sbm(&spec, graph_seed)?;
    let mut result = RepResult {
        rep,
        graph_seed,
        chain_seed,
        sampler_ari: None,
        sampler_nmi: None,
        baseline_ari: None,
        baseline_nmi: None,
        baseline_communities: None,
        baseline_labels: None,
    };
    if opts.run_sampler {
        let h = spec.blocks();
        let cfg = SamplerConfig::new(h)
            .with_alpha(vec![opts.alpha; h])
            .with_schedule(opts.burnin, opts.samples)
            .with_seed(chain_seed)
            .with_ratio_mode(opts.ratio_mode);
        let summary = run_chain(&planted.graph, &cfg)?;
        result.sampler_ari = Some(ari(&summary.hard_labels, &planted.truth)?);
        result.sampler_nmi = Some(nmi(&summary.hard_labels, &planted.truth)?);
    }
    if opts.run_baseline {
        let part = modularity_baseline(&planted.graph)?;
        result.baseline_ari = Some(ari(&part.labels, &planted.truth)?);
        result.baseline_nmi = Some(nmi(&part.labels, &planted.truth)?);
        result.baseline_communities = Some(part.communities);
        result.baseline_labels = Some(part.labels);
    }
    Ok(result)
}

fn mean_of(runs: &[RepResult], pick: impl Fn(&RepResult) -> Option<f64>) -> Option<f64> {
    let values: Vec<f64> = runs.iter().filter_map(pick).collect();
    (!values.is_empty()).then(|| round4(values.iter().sum::<f64>() / values.len() as f64))
}

/// Regenerates each preset `reps` times (graph seed `base_seed + rep`) and
/// scores the sampler and the modularity baseline on the same instances.
/// Repetitions run in parallel; results do not depend on scheduling.
pub fn sbm_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    if opts.reps == 0 {
        return Err(Error::InvalidConfig("reps must be at least 1".into()));
    }
    let jobs: Vec<(Preset, usize)> = opts
        .presets
        .iter()
        .flat_map(|&p| (0..opts.reps).map(move |r| (p, r)))
        .collect();
    let results: Vec<RepResult> = jobs
        .par_iter()
        .map(|&(p, r)| run_rep(p, r, opts))
        .collect::<Result<_>>()?;

    let presets = opts
        .presets
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let runs = results[idx * opts.reps..(idx + 1) * opts.reps].to_vec();
            PresetResult {
                preset: p.name().to_owned(),
                reps: opts.reps,
                sampler_ari: mean_of(&runs, |r| r.sampler_ari),
                sampler_nmi: mean_of(&runs, |r| r.sampler_nmi),
                baseline_ari: mean_of(&runs, |r| r.baseline_ari),
                baseline_nmi: mean_of(&runs, |r| r.baseline_nmi),
                runs,
            }
        })
        .collect();

    let mut notes = vec![
        "each repetition regenerates the SBM instance".to_owned(),
        "ARI is the adjusted Rand index (sometimes abbreviated ADI)".to_owned(),
    ];
    if opts.run_baseline {
        notes.push(
            "modularity baseline scores are means over the same instances as the sampler"
                .to_owned(),
        );
    }
    Ok(SuiteReport {
        burnin: opts.burnin,
        samples: opts.samples,
        base_seed: opts.base_seed,
        ratio_mode: opts.ratio_mode.to_string(),
        nmi_normalization: "geometric",
        notes,
        presets,
    })
}

impl SuiteReport {
    /// Table with one row per preset: sampler ARI/NMI, baseline ARI/NMI.
    pub fn render_table(&self) -> String {
        let cell = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| format!("{x:.4}"));
        let mut out = format!(
            "{:<6} {:>10} {:>10} {:>10} {:>10}\n",
            "", "MCMC ARI", "MCMC NMI", "Mod ARI", "Mod NMI"
        );
        for p in &self.presets {
            out.push_str(&format!(
                "{:<6} {:>10} {:>10} {:>10} {:>10}\n",
                p.preset.to_uppercase(),
                cell(p.sampler_ari),
                cell(p.sampler_nmi),
                cell(p.baseline_ari),
                cell(p.baseline_nmi)
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

//! Output formats: membership tables, chain diagnostics, DOT drawings, and
//! the serializable experiment report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::Graph;
use crate::metrics::{agreement_up_to_permutation, ari, nmi};
use crate::model::MembershipMatrix;
use crate::sampler::{ChainSummary, SamplerConfig};
use crate::Result;

const DECIMALS: u32 = 4;
const SCALE: u64 = 10u64.pow(DECIMALS);

/// Rounds to the printed precision of every report.
pub fn round4(x: f64) -> f64 {
    (x * SCALE as f64).round() / SCALE as f64
}

/// Rounds a simplex row to four decimals with the largest-remainder rule, so
/// the printed entries sum to exactly `1.0000`. Returns units of `1e-4`.
pub fn round_simplex_row(row: &[f64]) -> Vec<u64> {
    let scaled: Vec<f64> = row.iter().map(|v| v.max(0.0) * SCALE as f64).collect();
    let mut units: Vec<u64> = scaled.iter().map(|v| v.floor() as u64).collect();
    let assigned: u64 = units.iter().sum();
    let mut order: Vec<usize> = (0..row.len()).collect();
    // Largest fractional part first, ties to the lower index.
    order.sort_by(|&a, &b| {
        let fa = scaled[a] - scaled[a].floor();
        let fb = scaled[b] - scaled[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    let mut remaining = SCALE.saturating_sub(assigned);
    for &k in order.iter().cycle().take(row.len() * 2) {
        if remaining == 0 {
            break;
        }
        units[k] += 1;
        remaining -= 1;
    }
    units
}

fn fmt_units(u: u64) -> String {
    format!("{}.{:04}", u / SCALE, u % SCALE)
}

/// `node,z_1,...,z_h,community` with four-decimal memberships.
pub fn memberships_csv(g: &Graph, mean: &MembershipMatrix, hard: &[usize]) -> String {
    let mut out = String::from("node");
    for k in 1..=mean.h() {
        let _ = write!(out, ",z_{k}");
    }
    out.push_str(",community\n");
    for (i, row) in mean.rows().enumerate() {
        out.push_str(g.label(i));
        for u in round_simplex_row(row) {
            out.push(',');
            out.push_str(&fmt_units(u));
        }
        let _ = writeln!(out, ",{}", hard[i]);
    }
    out
}

const PALETTE: [&str; 10] = [
    "green",
    "red",
    "royalblue",
    "orange",
    "purple",
    "gold",
    "cyan",
    "pink",
    "brown",
    "gray",
];

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected Graphviz drawing with nodes filled by community: green and red
/// for the first two, a fixed palette beyond.
pub fn to_dot(g: &Graph, communities: &[usize]) -> String {
    let mut out = String::from("graph communities {\n  node [style=filled];\n");
    for (i, &c) in communities.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} [fillcolor={}];",
            dot_id(g.label(i)),
            PALETTE[c % PALETTE.len()]
        );
    }
    for (i, j) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", dot_id(g.label(i)), dot_id(g.label(j)));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub h: usize,
    pub alpha: Vec<f64>,
    pub burnin: usize,
    pub samples: usize,
    pub thin: usize,
    pub seed: u64,
    pub ratio_mode: String,
    pub epsilon: f64,
    pub relabel: bool,
}

impl From<&SamplerConfig> for ConfigEcho {
    fn from(cfg: &SamplerConfig) -> Self {
        Self {
            h: cfg.h,
            alpha: cfg.alpha.clone(),
            burnin: cfg.burnin,
            samples: cfg.samples,
            thin: cfg.thin,
            seed: cfg.seed,
            ratio_mode: cfg.ratio_mode.to_string(),
            epsilon: cfg.clamp.epsilon(),
            relabel: cfg.relabel,
        }
    }
}

/// Contents of `chain.json`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainFile {
    pub config: ConfigEcho,
    pub retained: usize,
    pub acceptance_rate: Vec<f64>,
    pub loglik_trace: Vec<f64>,
    pub wall_seconds: f64,
}

impl ChainFile {
    pub fn new(cfg: &SamplerConfig, summary: &ChainSummary, wall_seconds: f64) -> Self {
        Self {
            config: cfg.into(),
            retained: summary.retained,
            acceptance_rate: summary
                .acceptance_rate
                .iter()
                .copied()
                .map(round4)
                .collect(),
            loglik_trace: summary.loglik_trace.iter().copied().map(round4).collect(),
            wall_seconds: round4(wall_seconds),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MembershipRow {
    pub node: String,
    pub z: Vec<f64>,
    pub community: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Agreement {
    /// Best-permutation matches out of `n`.
    pub agreement: usize,
    pub n: usize,
    pub nmi: f64,
    pub ari: f64,
    pub nmi_normalization: &'static str,
}

impl Agreement {
    pub fn compute(pred: &[usize], truth: &[usize]) -> Result<Self> {
        Ok(Self {
            agreement: agreement_up_to_permutation(pred, truth)?,
            n: pred.len(),
            nmi: round4(nmi(pred, truth)?),
            ari: round4(ari(pred, truth)?),
            nmi_normalization: "geometric",
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Skipped,
}

/// Result of a single-dataset clustering experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub dataset: String,
    pub status: Status,
    pub nodes: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    pub memberships: Vec<MembershipRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Agreement>,
    pub mean_acceptance_rate: f64,
    pub wall_seconds: f64,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub summary: Option<ChainSummary>,
}

impl ExperimentReport {
    pub fn skipped(dataset: &str, reason: impl Into<String>) -> Self {
        Self {
            dataset: dataset.to_owned(),
            status: Status::Skipped,
            nodes: 0,
            edges: 0,
            config: None,
            memberships: Vec::new(),
            metrics: None,
            mean_acceptance_rate: 0.0,
            wall_seconds: 0.0,
            notes: vec![reason.into()],
            summary: None,
        }
    }

    pub fn from_chain(
        dataset: &str,
        g: &Graph,
        cfg: &SamplerConfig,
        summary: ChainSummary,
        truth: Option<&[usize]>,
        wall_seconds: f64,
    ) -> Result<Self> {
        let memberships = summary
            .mean
            .rows()
            .enumerate()
            .map(|(i, row)| MembershipRow {
                node: g.label(i).to_owned(),
                z: round_simplex_row(row)
                    .into_iter()
                    .map(|u| u as f64 / SCALE as f64)
                    .collect(),
                community: summary.hard_labels[i],
            })
            .collect();
        let metrics = truth
            .map(|t| Agreement::compute(&summary.hard_labels, t))
            .transpose()?;
        let rates = &summary.acceptance_rate;
        Ok(Self {
            dataset: dataset.to_owned(),
            status: Status::Ok,
            nodes: g.n(),
            edges: g.m(),
            config: Some(cfg.into()),
            memberships,
            metrics,
            mean_acceptance_rate: round4(rates.iter().sum::<f64>() / rates.len() as f64),
            wall_seconds: round4(wall_seconds),
            notes: Vec::new(),
            summary: Some(summary),
        })
    }

    /// Plain-text rendering: header, metrics, membership table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dataset: {}", self.dataset);
        let _ = writeln!(
            out,
            "status: {}",
            match self.status {
                Status::Ok => "ok",
                Status::Skipped => "skipped",
            }
        );
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        if self.status == Status::Skipped {
            return out;
        }
        let _ = writeln!(out, "nodes: {}  edges: {}", self.nodes, self.edges);
        if let Some(c) = &self.config {
            let _ = writeln!(
                out,
                "h: {}  burnin: {}  samples: {}  thin: {}  seed: {}  ratio: {}",
                c.h, c.burnin, c.samples, c.thin, c.seed, c.ratio_mode
            );
        }
        if let Some(m) = &self.metrics {
            let _ = writeln!(
                out,
                "agreement: {}/{}  NMI: {:.4}  ARI: {:.4}",
                m.agreement, m.n, m.nmi, m.ari
            );
        }
        let _ = writeln!(
            out,
            "mean acceptance rate: {:.4}",
            self.mean_acceptance_rate
        );
        let _ = writeln!(out, "wall seconds: {:.4}", self.wall_seconds);
        out.push_str("node");
        let h = self.memberships.first().map_or(0, |r| r.z.len());
        for k in 1..=h {
            let _ = write!(out, "\tZ_{k}");
        }
        out.push_str("\tcommunity\n");
        for row in &self.memberships {
            out.push_str(&row.node);
            for v in &row.z {
                let _ = write!(out, "\t{v:.4}");
            }
            let _ = writeln!(out, "\t{}", row.community);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn simplex_rounding_sums_exactly() {
        assert_eq!(round_simplex_row(&[1.0 / 3.0; 3]), vec![3334, 3333, 3333]);
        assert_eq!(round_simplex_row(&[0.12346, 0.87654]), vec![1235, 8765]);
        assert_eq!(round_simplex_row(&[1.0, 0.0]), vec![10000, 0]);
        let units = round_simplex_row(&[0.2, 0.2, 0.2, 0.2, 0.2]);
        assert_eq!(units.iter().sum::<u64>(), 10000);
    }

    #[test]
    fn memberships_csv_layout() {
        let g = parse_edge_list("a b").unwrap();
        let z = MembershipMatrix::from_rows(&[vec![0.25, 0.75], vec![0.9, 0.1]]).unwrap();
        let csv = memberships_csv(&g, &z, &[1, 0]);
        assert_eq!(
            csv,
            "node,z_1,z_2,community\na,0.2500,0.7500,1\nb,0.9000,0.1000,0\n"
        );
    }

    #[test]
    fn dot_output() {
        let g = parse_edge_list("x \"y\"").unwrap();
        let dot = to_dot(&g, &[0, 1]);
        assert!(dot.starts_with("graph communities {"));
        assert!(dot.contains("\"x\" [fillcolor=green];"));
        assert!(dot.contains("\"\\\"y\\\"\" [fillcolor=red];"));
        assert!(dot.contains("\"x\" -- \"\\\"y\\\"\";"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn round4_behaviour() {
        assert_eq!(round4(0.73924), 0.7392);
        assert_eq!(round4(1.0), 1.0);
    }
}

//! Planted-partition stochastic block models built from independent
//! Erdős–Rényi blocks.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::rng_from_seed;

/// Node budget accepted by [`generate_sbm`].
pub const DEFAULT_MAX_NODES: usize = 1_000_000;

/// Block sizes and a symmetric matrix of link densities between blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmSpec {
    block_sizes: Vec<usize>,
    density: Vec<Vec<f64>>,
}

impl SbmSpec {
    pub fn new(block_sizes: Vec<usize>, density: Vec<Vec<f64>>) -> Result<Self> {
        let k = block_sizes.len();
        if k == 0 {
            return Err(Error::InvalidConfig("at least one block required".into()));
        }
        if let Some(b) = block_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidConfig(format!("block {b} is empty")));
        }
        if density.len() != k || density.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidConfig(format!(
                "density matrix must be {k}x{k}"
            )));
        }
        for a in 0..k {
            for b in 0..k {
                let p = density[a][b];
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidConfig(format!(
                        "density[{a}][{b}] = {p} outside [0, 1]"
                    )));
                }
                if p != density[b][a] {
                    return Err(Error::InvalidConfig(format!(
                        "density matrix not symmetric at ({a},{b})"
                    )));
                }
            }
        }
        Ok(Self {
            block_sizes,
            density,
        })
    }

    /// Constant `within` on the diagonal, `cross` elsewhere.
    pub fn planted(block_sizes: Vec<usize>, within: f64, cross: f64) -> Result<Self> {
        let k = block_sizes.len();
        let density = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| if a == b { within } else { cross })
                    .collect()
            })
            .collect();
        Self::new(block_sizes, density)
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn density(&self) -> &[Vec<f64>] {
        &self.density
    }

    pub fn blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn total_nodes(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    /// Block index of every node, nodes ordered by block.
    pub fn membership(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect()
    }
}

/// The five benchmark configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Sbm1,
    Sbm2,
    Sbm3,
    Sbm4,
    Sbm5,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Sbm1,
        Preset::Sbm2,
        Preset::Sbm3,
        Preset::Sbm4,
        Preset::Sbm5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sbm1 => "sbm1",
            Preset::Sbm2 => "sbm2",
            Preset::Sbm3 => "sbm3",
            Preset::Sbm4 => "sbm4",
            Preset::Sbm5 => "sbm5",
        }
    }

    pub fn spec(self) -> SbmSpec {
        let (sizes, within, cross) = match self {
            Preset::Sbm1 => (vec![80, 20], 0.8, 0.02),
            Preset::Sbm2 => (vec![80, 20], 0.8, 0.2),
            Preset::Sbm3 => (vec![400, 100], 0.8, 0.02),
            Preset::Sbm4 => (vec![100, 10, 10], 0.8, 0.02),
            Preset::Sbm5 => (vec![40, 30, 20, 20], 0.8, 0.02),
        };
        SbmSpec::planted(sizes, within, cross).expect("preset parameters are valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownPreset {
                name: s.to_owned(),
                valid: Preset::ALL.map(Preset::name).join(", "),
            })
    }
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<SbmSpec> {
    name.parse::<Preset>().map(Preset::spec)
}

/// A generated graph with its planted community of every node.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedGraph {
    pub graph: Graph,
    pub truth: Vec<usize>,
}

pub fn generate_sbm(spec: &SbmSpec, seed: u64) -> Result<PlantedGraph> {
    generate_sbm_with_limit(spec, seed, DEFAULT_MAX_NODES)
}

/// Links every pair `i < j` independently with the density of its block
/// pair, drawing one uniform per pair in canonical order. Node labels are
/// `"1".."n"`, ordered by block.
pub fn generate_sbm_with_limit(
    spec: &SbmSpec,
    seed: u64,
    max_nodes: usize,
) -> Result<PlantedGraph> {
    let n = spec
        .block_sizes
        .iter()
        .try_fold(0usize, |acc, &s| acc.checked_add(s))
        .filter(|&n| n <= max_nodes)
        .ok_or_else(|| Error::InvalidConfig(format!("SBM exceeds the {max_nodes}-node limit")))?;
    let truth = spec.membership();
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        let row = &spec.density[truth[i]];
        for j in (i + 1)..n {
            let u: f64 = rng.random();
            if u < row[truth[j]] {
                edges.push((i, j));
            }
        }
    }
    let labels = (1..=n).map(|k| k.to_string()).collect();
    Ok(PlantedGraph {
        graph: Graph::from_edges(labels, edges)?,
        truth,
    })
}

//! Metropolis-Hastings within Gibbs sampling of the membership matrix.
//!
//! Each sweep visits nodes in index order. For node `i` a candidate row is
//! drawn from the Dirichlet prior and accepted when `ln U` falls below the
//! log acceptance ratio. After `burnin` sweeps every `thin`-th state is
//! averaged into the posterior mean.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{
    check_alpha, dirichlet_log_kernel, graph_log_likelihood, node_log_likelihood, ClampPolicy,
    MembershipMatrix,
};

/// Seedable generator used throughout the crate. ChaCha8 output is fixed
/// across platforms and crate releases, so seeded runs are reproducible.
pub type ChainRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChainRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which acceptance ratio the Metropolis-Hastings step evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioMode {
    /// Likelihood times prior for the candidate over the same for the
    /// current row.
    #[default]
    Published,
    /// Likelihood ratio only. The prior cancels against the Dirichlet
    /// independence proposal, so this targets the exact posterior.
    Corrected,
}

impl fmt::Display for RatioMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioMode::Published => "published",
            RatioMode::Corrected => "corrected",
        })
    }
}

impl FromStr for RatioMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "published" => Ok(RatioMode::Published),
            "corrected" => Ok(RatioMode::Corrected),
            other => Err(Error::InvalidConfig(format!(
                "unknown ratio mode `{other}` (expected `published` or `corrected`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    /// Number of communities.
    pub h: usize,
    /// Dirichlet prior, one positive entry per community.
    pub alpha: Vec<f64>,
    /// Sweeps discarded before any state is retained.
    pub burnin: usize,
    /// Post-burn-in sweeps.
    pub samples: usize,
    pub seed: u64,
    pub ratio_mode: RatioMode,
    pub clamp: ClampPolicy,
    /// Keep every `thin`-th post-burn-in state.
    pub thin: usize,
    /// Align each retained state's columns to the running mean before
    /// averaging.
    pub relabel: bool,
}

impl SamplerConfig {
    /// Flat prior, 5000 burn-in sweeps, 10000 samples, seed 0.
    pub fn new(h: usize) -> Self {
        Self {
            h,
            alpha: vec![1.0; h],
            burnin: 5000,
            samples: 10000,
            seed: 0,
            ratio_mode: RatioMode::Published,
            clamp: ClampPolicy::default(),
            thin: 1,
            relabel: false,
        }
    }

    pub fn with_schedule(mut self, burnin: usize, samples: usize) -> Self {
        self.burnin = burnin;
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_ratio_mode(mut self, mode: RatioMode) -> Self {
        self.ratio_mode = mode;
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<f64>) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.h < 2 {
            return Err(Error::InvalidConfig(format!(
                "at least two communities required, got {}",
                self.h
            )));
        }
        if self.alpha.len() != self.h {
            return Err(Error::InvalidConfig(format!(
                "alpha has {} entries but h = {}",
                self.alpha.len(),
                self.h
            )));
        }
        check_alpha(&self.alpha)?;
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        if self.thin == 0 {
            return Err(Error::InvalidConfig("thin must be at least 1".into()));
        }
        Ok(())
    }
}

/// Draws one point from `Dirichlet(alpha)` by normalizing independent
/// `Gamma(alpha_k, 1)` variates.
///
/// Components with `alpha_k < 1` are drawn as `Gamma(alpha_k + 1) * U^(1/alpha_k)`
/// in log space and normalized with log-sum-exp, so tiny shapes never
/// underflow the whole vector to zero.
pub fn sample_dirichlet<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let mut out = vec![0.0; alpha.len()];
    fill_dirichlet(alpha, rng, &mut out);
    Ok(out)
}

fn fill_dirichlet<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R, out: &mut [f64]) {
    for (slot, &a) in out.iter_mut().zip(alpha) {
        *slot = if a < 1.0 {
            let g: f64 = Gamma::new(a + 1.0, 1.0).expect("shape > 0").sample(rng);
            let u: f64 = rng.random();
            g.ln() + u.ln() / a
        } else {
            let g: f64 = Gamma::new(a, 1.0).expect("shape > 0").sample(rng);
            g.ln()
        };
    }
    let max = out.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in out.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    for v in out.iter_mut() {
        *v /= sum;
    }
}

/// Log of the Metropolis-Hastings acceptance ratio for replacing row `i` of
/// `z` with `candidate`.
///
/// Only dyads touching `i` are evaluated; every other factor of the joint
/// likelihood is shared by numerator and denominator.
pub fn log_acceptance_ratio(
    g: &Graph,
    z: &MembershipMatrix,
    i: usize,
    candidate: &[f64],
    alpha: &[f64],
    mode: RatioMode,
    clamp: ClampPolicy,
) -> f64 {
    let current = z.row(i);
    let mut ratio = node_log_likelihood(g, z, i, candidate, clamp)
        - node_log_likelihood(g, z, i, current, clamp);
    if mode == RatioMode::Published {
        ratio += dirichlet_log_kernel(candidate, alpha) - dirichlet_log_kernel(current, alpha);
    }
    ratio
}

/// Result of one Metropolis-Hastings step on a single node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeUpdate {
    pub row: Vec<f64>,
    pub accepted: bool,
}

/// Proposes `T_i ~ Dirichlet(alpha)`, then draws `U ~ Uniform(0, 1)` and
/// accepts iff `ln U < ln ratio`. A NaN ratio (e.g. `inf - inf` at the simplex
/// boundary) rejects.
pub fn mh_node_update<R: Rng + ?Sized>(
    g: &Graph,
    z: &MembershipMatrix,
    i: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<NodeUpdate> {
    cfg.validate()?;
    if g.n() != z.n() || z.h() != cfg.h {
        return Err(Error::DimensionMismatch(format!(
            "graph n = {}, membership {}x{}, config h = {}",
            g.n(),
            z.n(),
            z.h(),
            cfg.h
        )));
    }
    if i >= g.n() {
        return Err(Error::DimensionMismatch(format!(
            "node index {i} out of range for {} nodes",
            g.n()
        )));
    }
    let mut candidate = vec![0.0; cfg.h];
    let accepted = propose(g, z, i, cfg, rng, &mut candidate);
    let row = if accepted {
        candidate
    } else {
        z.row(i).to_vec()
    };
    Ok(NodeUpdate { row, accepted })
}

fn propose<R: Rng + ?Sized>(
    g: &Graph,
    z: &MembershipMatrix,
    i: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
    candidate: &mut [f64],
) -> bool {
    fill_dirichlet(&cfg.alpha, rng, candidate);
    let u: f64 = rng.random();
    let ratio = log_acceptance_ratio(g, z, i, candidate, &cfg.alpha, cfg.ratio_mode, cfg.clamp);
    u.ln() < ratio
}

/// Posterior summary of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSummary {
    /// Elementwise average of the retained states.
    pub mean: MembershipMatrix,
    pub hard_labels: Vec<usize>,
    /// Fraction of accepted proposals per node over all sweeps.
    pub acceptance_rate: Vec<f64>,
    /// Log-likelihood of each retained state.
    pub loglik_trace: Vec<f64>,
    pub retained: usize,
}

pub fn run_chain(g: &Graph, cfg: &SamplerConfig) -> Result<ChainSummary> {
    run_chain_with(g, cfg, |_| {})
}

/// Like [`run_chain`], calling `observe` on every retained state (after
/// relabeling, when enabled).
pub fn run_chain_with<F>(g: &Graph, cfg: &SamplerConfig, mut observe: F) -> Result<ChainSummary>
where
    F: FnMut(&MembershipMatrix),
{
    cfg.validate()?;
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "graph must have at least two nodes, got {n}"
        )));
    }
    let h = cfg.h;
    let mut rng = rng_from_seed(cfg.seed);
    let mut z = MembershipMatrix::uniform(n, h)?;
    let mut candidate = vec![0.0; h];
    let mut accepted = vec![0usize; n];
    let mut sum = vec![0.0; n * h];
    let mut retained = 0usize;
    let mut loglik_trace = Vec::with_capacity(cfg.samples / cfg.thin + 1);

    let sweeps = cfg.burnin + cfg.samples;
    for sweep in 0..sweeps {
        for i in 0..n {
            if propose(g, &z, i, cfg, &mut rng, &mut candidate) {
                z.row_mut(i).copy_from_slice(&candidate);
                accepted[i] += 1;
            }
        }
        if sweep < cfg.burnin || !(sweep - cfg.burnin).is_multiple_of(cfg.thin) {
            continue;
        }
        loglik_trace.push(graph_log_likelihood(g, &z, cfg.clamp)?);
        let aligned;
        let state = if cfg.relabel && retained > 0 {
            let reference =
                MembershipMatrix::from_raw(n, h, sum.iter().map(|s| s / retained as f64).collect());
            let perm = relabel_running(&z, &reference)?;
            aligned = z.permute_columns(&perm);
            &aligned
        } else {
            &z
        };
        for (acc, v) in sum.iter_mut().zip(state.as_slice()) {
            *acc += v;
        }
        retained += 1;
        observe(state);
    }

    let mean = MembershipMatrix::from_raw(n, h, sum.iter().map(|s| s / retained as f64).collect());
    let hard_labels = hard_assign(&mean);
    let acceptance_rate = accepted.iter().map(|&a| a as f64 / sweeps as f64).collect();
    Ok(ChainSummary {
        mean,
        hard_labels,
        acceptance_rate,
        loglik_trace,
        retained,
    })
}

/// Row-wise argmax, ties to the lowest community index.
pub fn hard_assign(mean: &MembershipMatrix) -> Vec<usize> {
    mean.rows()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (k, &v)| {
                    if v > best.1 {
                        (k, v)
                    } else {
                        best
                    }
                })
                .0
        })
        .collect()
}

/// Largest community count [`relabel_running`] will search exhaustively.
pub const MAX_RELABEL_COMMUNITIES: usize = 8;

/// Column permutation `perm` of `state` maximizing
/// `Σ_i Σ_k state[i][perm[k]] * reference[i][k]`, by exhaustive search.
/// Ties keep the lexicographically first permutation, so the identity wins
/// whenever it is optimal.
pub fn relabel_running(
    state: &MembershipMatrix,
    reference: &MembershipMatrix,
) -> Result<Vec<usize>> {
    if state.n() != reference.n() || state.h() != reference.h() {
        return Err(Error::DimensionMismatch(format!(
            "state {}x{} vs reference {}x{}",
            state.n(),
            state.h(),
            reference.n(),
            reference.h()
        )));
    }
    let h = state.h();
    if h > MAX_RELABEL_COMMUNITIES {
        return Err(Error::Unsupported(format!(
            "relabeling searches all h! permutations and supports h <= {MAX_RELABEL_COMMUNITIES}, got {h}"
        )));
    }
    // score[a][b] = Σ_i state[i][a] * reference[i][b]
    let mut score = vec![vec![0.0; h]; h];
    for (s, r) in state.rows().zip(reference.rows()) {
        for a in 0..h {
            for b in 0..h {
                score[a][b] += s[a] * r[b];
            }
        }
    }
    let mut best = (0..h).collect::<Vec<_>>();
    let mut best_score = f64::NEG_INFINITY;
    for perm in (0..h).permutations(h) {
        let total: f64 = perm.iter().enumerate().map(|(k, &a)| score[a][k]).sum();
        if total > best_score {
            best_score = total;
            best = perm;
        }
    }
    Ok(best)
}

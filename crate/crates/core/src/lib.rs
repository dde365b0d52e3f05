//! Bayesian mixed-membership clustering of social networks.
//!
//! Every node gets a membership vector on the probability simplex and two
//! nodes link with probability equal to the cosine similarity of their
//! vectors. Memberships are inferred by Metropolis-Hastings within Gibbs
//! sampling under a Dirichlet prior ([`sampler`]); hard clusters come from
//! the row-wise argmax of the posterior mean.
//!
//! Alongside the model the crate ships planted-partition benchmarks
//! ([`simulate`]), partition metrics ([`metrics`]), modularity
//! maximization baselines ([`baseline`]) and end-to-end experiment runners
//! ([`experiment`]).
//!
//! ```no_run
//! use netmix::{graph, sampler};
//!
//! let g = graph::builtin_zachary();
//! let cfg = sampler::SamplerConfig::new(2).with_seed(7);
//! let summary = sampler::run_chain(&g, &cfg)?;
//! println!("{:?}", summary.hard_labels);
//! # Ok::<(), netmix::Error>(())
//! ```

pub mod baseline;
mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod model;
pub mod report;
pub mod sampler;
pub mod simulate;

pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{ClampPolicy, MembershipMatrix};
pub use sampler::{ChainSummary, RatioMode, SamplerConfig};
pub use simulate::{PlantedGraph, Preset, SbmSpec};

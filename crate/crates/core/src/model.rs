//! Cosine-similarity link model.
//!
//! Each node `i` carries a membership vector `Z_i` on the probability simplex
//! and two nodes link with probability `cos(Z_i, Z_j)`. Everything here works
//! in log space; link probabilities are clamped away from 0 and 1 so that
//! proportional or orthogonal rows never produce an infinite log-likelihood.

use crate::error::{Error, Result};
use crate::graph::Graph;

const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// `n` membership rows of width `h`, each on the `(h-1)`-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix {
    n: usize,
    h: usize,
    data: Vec<f64>,
}

impl MembershipMatrix {
    /// Every row set to `1/h`.
    pub fn uniform(n: usize, h: usize) -> Result<Self> {
        check_shape(n, h)?;
        Ok(Self {
            n,
            h,
            data: vec![1.0 / h as f64; n * h],
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let h = rows.first().map_or(0, Vec::len);
        check_shape(n, h)?;
        let mut data = Vec::with_capacity(n * h);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != h {
                return Err(Error::InvalidMembership(format!(
                    "row {i} has {} entries, expected {h}",
                    row.len()
                )));
            }
            check_row(i, row)?;
            data.extend_from_slice(row);
        }
        Ok(Self { n, h, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.h..(i + 1) * self.h]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.h)
    }

    /// Replaces row `i`, validating that it lies on the simplex.
    pub fn set_row(&mut self, i: usize, row: &[f64]) -> Result<()> {
        if row.len() != self.h {
            return Err(Error::DimensionMismatch(format!(
                "row of width {} for h = {}",
                row.len(),
                self.h
            )));
        }
        check_row(i, row)?;
        self.data[i * self.h..(i + 1) * self.h].copy_from_slice(row);
        Ok(())
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.h..(i + 1) * self.h]
    }

    pub(crate) fn from_raw(n: usize, h: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * h);
        Self { n, h, data }
    }

    pub(crate) fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Reorders columns so that new column `k` is old column `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for row in self.rows() {
            data.extend(perm.iter().map(|&k| row[k]));
        }
        Self::from_raw(self.n, self.h, data)
    }

    /// Checks every row against the simplex invariants.
    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows().enumerate() {
            check_row(i, row)?;
        }
        Ok(())
    }
}

fn check_shape(n: usize, h: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidMembership("at least one row required".into()));
    }
    if h < 2 {
        return Err(Error::InvalidMembership(format!(
            "at least two communities required, got {h}"
        )));
    }
    Ok(())
}

fn check_row(i: usize, row: &[f64]) -> Result<()> {
    if let Some(k) = row.iter().position(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::InvalidMembership(format!(
            "entry ({i},{k}) = {} outside [0, 1]",
            row[k]
        )));
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
        return Err(Error::InvalidMembership(format!(
            "row {i} sums to {sum}, expected 1"
        )));
    }
    Ok(())
}

/// Bounds link probabilities to `[epsilon, 1 - epsilon]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampPolicy {
    epsilon: f64,
}

impl ClampPolicy {
    pub const DEFAULT_EPSILON: f64 = 1e-9;

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "clamp epsilon must lie in (0, 0.5), got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    #[inline]
    pub fn apply(&self, p: f64) -> f64 {
        p.clamp(self.epsilon, 1.0 - self.epsilon)
    }
}

impl Default for ClampPolicy {
    fn default() -> Self {
        Self {
            epsilon: Self::DEFAULT_EPSILON,
        }
    }
}

/// `x·y / (‖x‖ ‖y‖)`.
pub fn cosine_similarity(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    let (dot, xx, yy) = dot_and_norms(x, y);
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(dot / (xx.sqrt() * yy.sqrt()))
}

#[inline]
fn dot_and_norms(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    x.iter()
        .zip(y)
        .fold((0.0, 0.0, 0.0), |(d, a, b), (&u, &v)| {
            (d + u * v, a + u * u, b + v * v)
        })
}

/// Clamped cosine link probability between two simplex rows.
#[inline]
pub fn link_probability(zi: &[f64], zj: &[f64], clamp: ClampPolicy) -> f64 {
    let (dot, xx, yy) = dot_and_norms(zi, zj);
    clamp.apply(dot / (xx.sqrt() * yy.sqrt()))
}

/// Bernoulli log-mass of one dyad.
#[inline]
pub(crate) fn dyad_log_mass(p: f64, linked: bool) -> f64 {
    if linked {
        p.ln()
    } else {
        (1.0 - p).ln()
    }
}

fn check_dims(g: &Graph, z: &MembershipMatrix) -> Result<()> {
    if g.n() != z.n() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} nodes but membership matrix has {} rows",
            g.n(),
            z.n()
        )));
    }
    Ok(())
}

/// Log-likelihood of the whole adjacency matrix over all pairs `i < j`.
pub fn graph_log_likelihood(g: &Graph, z: &MembershipMatrix, clamp: ClampPolicy) -> Result<f64> {
    check_dims(g, z)?;
    let mut total = 0.0;
    for i in 0..g.n() {
        let zi = z.row(i);
        g.for_each_dyad(i, |j, linked| {
            if j > i {
                total += dyad_log_mass(link_probability(zi, z.row(j), clamp), linked);
            }
        });
    }
    Ok(total)
}

/// Log-likelihood of the `n - 1` dyads touching node `i`, with `candidate`
/// standing in for row `i`.
pub(crate) fn node_log_likelihood(
    g: &Graph,
    z: &MembershipMatrix,
    i: usize,
    candidate: &[f64],
    clamp: ClampPolicy,
) -> f64 {
    let mut total = 0.0;
    g.for_each_dyad(i, |j, linked| {
        total += dyad_log_mass(link_probability(candidate, z.row(j), clamp), linked);
    });
    total
}

pub(crate) fn check_alpha(alpha: &[f64]) -> Result<()> {
    match alpha.iter().position(|&a| !(a > 0.0 && a.is_finite())) {
        Some(index) => Err(Error::NonPositiveAlpha {
            index,
            value: alpha[index],
        }),
        None => Ok(()),
    }
}

/// Unnormalized log Dirichlet density `Σ_k (α_k - 1) log z_k`.
///
/// Terms with `α_k = 1` contribute exactly zero even at `z_k = 0`.
pub fn dirichlet_log_kernel(row: &[f64], alpha: &[f64]) -> f64 {
    row.iter()
        .zip(alpha)
        .filter(|(_, &a)| a != 1.0)
        .map(|(&v, &a)| (a - 1.0) * v.ln())
        .sum()
}

/// Unnormalized log full conditional of row `i` given every other row.
///
/// Only the dyads touching `i` enter; the remaining factors are constant in
/// `Z_i`. A zero entry with `α_k > 1` yields `-inf`, and with `α_k < 1`
/// yields `+inf`.
pub fn node_conditional_log_density(
    g: &Graph,
    z: &MembershipMatrix,
    i: usize,
    alpha: &[f64],
    clamp: ClampPolicy,
) -> Result<f64> {
    check_dims(g, z)?;
    if i >= g.n() {
        return Err(Error::DimensionMismatch(format!(
            "node index {i} out of range for {} nodes",
            g.n()
        )));
    }
    if alpha.len() != z.h() {
        return Err(Error::DimensionMismatch(format!(
            "alpha has {} entries, expected {}",
            alpha.len(),
            z.h()
        )));
    }
    check_alpha(alpha)?;
    let zi = z.row(i);
    Ok(node_log_likelihood(g, z, i, zi, clamp) + dirichlet_log_kernel(zi, alpha))
}

//! Partition comparison (NMI, ARI, best-permutation agreement), Newman
//! modularity, and the `node,community` label CSV format.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of distinct labels on the smaller side that
/// [`agreement_up_to_permutation`] accepts.
pub const MAX_AGREEMENT_LABELS: usize = 8;

/// Maps arbitrary labels to `0..k` in first-appearance order.
fn compress(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let dense = labels
        .iter()
        .map(|l| {
            let next = ids.len();
            *ids.entry(*l).or_insert(next)
        })
        .collect();
    (dense, ids.len())
}

fn check_lengths(pred: &[usize], truth: &[usize]) -> Result<()> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    Ok(())
}

/// Cross-tabulation of two labelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// `counts[p][t]`: items with predicted cluster `p` and true cluster `t`.
    pub counts: Vec<Vec<usize>>,
    pub n: usize,
}

impl ContingencyTable {
    pub fn new(pred: &[usize], truth: &[usize]) -> Result<Self> {
        check_lengths(pred, truth)?;
        let (p, kp) = compress(pred);
        let (t, kt) = compress(truth);
        let mut counts = vec![vec![0; kt]; kp];
        for (&a, &b) in p.iter().zip(&t) {
            counts[a][b] += 1;
        }
        Ok(Self {
            counts,
            n: pred.len(),
        })
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let k = self.counts.first().map_or(0, Vec::len);
        (0..k)
            .map(|t| self.counts.iter().map(|r| r[t]).sum())
            .collect()
    }
}

fn entropy(sizes: &[usize], n: f64) -> f64 {
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information with geometric-mean normalization,
/// `I(pred; truth) / sqrt(H(pred) H(truth))`, natural logs.
///
/// Two single-cluster partitions score 1; a single-cluster partition against
/// any other scores 0.
pub fn nmi(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth)?;
    if pred.is_empty() {
        return Err(Error::InvalidConfig("labelings must be non-empty".into()));
    }
    let table = ContingencyTable::new(pred, truth)?;
    let n = table.n as f64;
    let rows = table.row_sums();
    let cols = table.col_sums();
    let hp = entropy(&rows, n);
    let ht = entropy(&cols, n);
    if rows.len() == 1 && cols.len() == 1 {
        return Ok(1.0);
    }
    if rows.len() == 1 || cols.len() == 1 {
        return Ok(0.0);
    }
    let mut mi = 0.0;
    for (a, row) in table.counts.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as f64;
            mi += c / n * (c * n / (rows[a] as f64 * cols[b] as f64)).ln();
        }
    }
    Ok((mi / (hp * ht).sqrt()).clamp(0.0, 1.0))
}

fn comb2(k: usize) -> f64 {
    let k = k as f64;
    k * (k - 1.0) / 2.0
}

/// Hubert–Arabie adjusted Rand index.
pub fn ari(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth)?;
    if pred.len() < 2 {
        return Err(Error::InvalidConfig(
            "adjusted Rand index needs at least two items".into(),
        ));
    }
    let table = ContingencyTable::new(pred, truth)?;
    let index: f64 = table.counts.iter().flatten().map(|&c| comb2(c)).sum();
    let sum_rows: f64 = table.row_sums().into_iter().map(comb2).sum();
    let sum_cols: f64 = table.col_sums().into_iter().map(comb2).sum();
    let expected = sum_rows * sum_cols / comb2(table.n);
    let max_index = 0.5 * (sum_rows + sum_cols);
    let denom = max_index - expected;
    if denom == 0.0 {
        let kt = table.counts[0].len();
        let identical = table
            .counts
            .iter()
            .all(|r| r.iter().filter(|&&c| c > 0).count() == 1)
            && (0..kt).all(|t| table.counts.iter().filter(|r| r[t] > 0).count() == 1);
        return Ok(if identical { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / denom)
}

/// Newman modularity `Σ_c [e_c/m - (d_c/2m)^2]`.
pub fn modularity_score(g: &Graph, labels: &[usize]) -> Result<f64> {
    if labels.len() != g.n() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: g.n(),
        });
    }
    if g.m() == 0 {
        return Err(Error::NoEdges);
    }
    let (dense, k) = compress(labels);
    let mut internal = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for i in 0..g.n() {
        degree[dense[i]] += g.degree(i);
    }
    for (i, j) in g.edges() {
        if dense[i] == dense[j] {
            internal[dense[i]] += 1;
        }
    }
    let m = g.m() as f64;
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2))
        .sum())
}

/// Largest number of positions on which `pred` and `truth` agree after the
/// best one-to-one renaming of labels.
pub fn agreement_up_to_permutation(pred: &[usize], truth: &[usize]) -> Result<usize> {
    check_lengths(pred, truth)?;
    if pred.is_empty() {
        return Ok(0);
    }
    let table = ContingencyTable::new(pred, truth)?;
    let kp = table.counts.len();
    let kt = table.counts[0].len();
    // Orient so the smaller label set indexes the bitmask.
    let (small, large, weight): (usize, usize, Box<dyn Fn(usize, usize) -> usize>) = if kp <= kt {
        (kp, kt, Box::new(|s, l| table.counts[s][l]))
    } else {
        (kt, kp, Box::new(|s, l| table.counts[l][s]))
    };
    if small > MAX_AGREEMENT_LABELS {
        return Err(Error::Unsupported(format!(
            "agreement search supports at most {MAX_AGREEMENT_LABELS} labels on the smaller side, got {small}"
        )));
    }
    // best[mask]: max matches using large-side labels seen so far, with the
    // small-side labels in `mask` already matched.
    let states = 1usize << small;
    let mut best = vec![None; states];
    best[0] = Some(0usize);
    for l in 0..large {
        let mut next = best.clone();
        for mask in 0..states {
            let Some(score) = best[mask] else { continue };
            for s in 0..small {
                if mask & (1 << s) == 0 {
                    let cand = score + weight(s, l);
                    let slot = &mut next[mask | (1 << s)];
                    if slot.is_none_or(|v| cand > v) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        best = next;
    }
    Ok(best.into_iter().flatten().max().unwrap_or(0))
}

/// Parses a `node,community` CSV with header.
pub fn parse_label_csv(text: &str) -> Result<Vec<(String, usize)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim().replace(' ', "") == "node,community" => {}
        Some((idx, header)) => {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!(
                    "expected header `node,community`, found `{}`",
                    header.trim()
                ),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty label file".into(),
            })
        }
    }
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (idx, line) in lines {
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        let [node, community] = parts[..] else {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected two fields, found {}", parts.len()),
            });
        };
        let community: usize = community.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("community `{community}` is not a nonnegative integer"),
        })?;
        if seen.insert(node.to_owned(), idx + 1).is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("duplicate node `{node}`"),
            });
        }
        out.push((node.to_owned(), community));
    }
    Ok(out)
}

pub fn write_label_csv<S: AsRef<str>>(nodes: &[S], communities: &[usize]) -> String {
    let mut out = String::from("node,community\n");
    for (node, c) in nodes.iter().zip(communities) {
        let _ = writeln!(out, "{},{c}", node.as_ref());
    }
    out
}

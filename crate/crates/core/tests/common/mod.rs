//! Independent reference implementations and shared check suites.
//!
//! Everything here recomputes from first principles on dense matrices and
//! plain loops, sharing no code with the library beyond its public types.

#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use netmix::baseline::{greedy_modularity, modularity_baseline};
use netmix::metrics::{agreement_up_to_permutation, ari, modularity_score, nmi};
use netmix::model::{cosine_similarity, graph_log_likelihood, node_conditional_log_density};
use netmix::sampler::{log_acceptance_ratio, relabel_running, run_chain, run_chain_with};
use netmix::simulate::generate_sbm;
use netmix::{ClampPolicy, Graph, MembershipMatrix, RatioMode, SamplerConfig, SbmSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-10;
pub const INSTANCES: usize = 200;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Random instances

/// Random simple graph on `n` nodes labelled `v0..`, edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> (Graph, Vec<Vec<bool>>) {
    let mut dense = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                dense[i][j] = true;
                dense[j][i] = true;
                edges.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    (Graph::from_edges(labels, edges).unwrap(), dense)
}

/// Random graph guaranteed to have at least one edge.
pub fn random_graph_with_edge(rng: &mut ChaCha8Rng, n: usize) -> (Graph, Vec<Vec<bool>>) {
    loop {
        let p = rng.random_range(0.2..0.8);
        let (g, dense) = random_graph(rng, n, p);
        if g.m() > 0 {
            return (g, dense);
        }
    }
}

/// Strictly positive simplex row.
pub fn random_row(rng: &mut ChaCha8Rng, h: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..h).map(|_| rng.random_range(0.01..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

pub fn random_membership(rng: &mut ChaCha8Rng, n: usize, h: usize) -> MembershipMatrix {
    let rows: Vec<Vec<f64>> = (0..n).map(|_| random_row(rng, h)).collect();
    MembershipMatrix::from_rows(&rows).unwrap()
}

pub fn random_alpha(rng: &mut ChaCha8Rng, h: usize) -> Vec<f64> {
    (0..h).map(|_| rng.random_range(0.3..4.0)).collect()
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a == b) || (a - b).abs() <= tol
}

// ---------------------------------------------------------------------------
// Model oracles

pub fn naive_cosine(x: &[f64], y: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    for k in 0..x.len() {
        dot += x[k] * y[k];
        xx += x[k] * x[k];
        yy += y[k] * y[k];
    }
    dot / (xx.sqrt() * yy.sqrt())
}

fn naive_p(x: &[f64], y: &[f64], eps: f64) -> f64 {
    naive_cosine(x, y).max(eps).min(1.0 - eps)
}

fn naive_dyad(a: bool, p: f64) -> f64 {
    if a {
        p.ln()
    } else {
        (1.0 - p).ln()
    }
}

/// Sum over every unordered pair of the Bernoulli log mass.
pub fn naive_loglik(adj: &[Vec<bool>], rows: &[Vec<f64>], eps: f64) -> f64 {
    let n = adj.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += naive_dyad(adj[i][j], naive_p(&rows[i], &rows[j], eps));
        }
    }
    total
}

pub fn naive_log_prior(row: &[f64], alpha: &[f64]) -> f64 {
    let mut total = 0.0;
    for k in 0..row.len() {
        if alpha[k] != 1.0 {
            total += (alpha[k] - 1.0) * row[k].ln();
        }
    }
    total
}

/// Terms of the joint touching node `i`, plus its prior kernel.
pub fn naive_conditional(
    adj: &[Vec<bool>],
    rows: &[Vec<f64>],
    i: usize,
    alpha: &[f64],
    eps: f64,
) -> f64 {
    let mut total = 0.0;
    for j in 0..adj.len() {
        if j != i {
            total += naive_dyad(adj[i][j], naive_p(&rows[i], &rows[j], eps));
        }
    }
    total + naive_log_prior(&rows[i], alpha)
}

/// Log of the full printed ratio: the joint likelihood over all pairs (and,
/// in published mode, the prior over all nodes) with row `i` replaced by
/// `candidate`, divided by the same for the current state.
pub fn naive_full_log_ratio(
    adj: &[Vec<bool>],
    rows: &[Vec<f64>],
    i: usize,
    candidate: &[f64],
    alpha: &[f64],
    published: bool,
    eps: f64,
) -> f64 {
    let mut proposed = rows.to_vec();
    proposed[i] = candidate.to_vec();
    let mut ratio = naive_loglik(adj, &proposed, eps) - naive_loglik(adj, rows, eps);
    if published {
        let prior = |rs: &[Vec<f64>]| rs.iter().map(|r| naive_log_prior(r, alpha)).sum::<f64>();
        ratio += prior(&proposed) - prior(rows);
    }
    ratio
}

// ---------------------------------------------------------------------------
// Metric oracles

/// Pair-counting adjusted Rand index.
pub fn naive_ari(x: &[usize], y: &[usize]) -> f64 {
    let (mut a, mut b, mut c, mut d) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            match (x[i] == x[j], y[i] == y[j]) {
                (true, true) => a += 1.0,
                (true, false) => b += 1.0,
                (false, true) => c += 1.0,
                (false, false) => d += 1.0,
            }
        }
    }
    let denom = (a + b) * (b + d) + (a + c) * (c + d);
    if denom == 0.0 {
        return if b == 0.0 && c == 0.0 { 1.0 } else { 0.0 };
    }
    2.0 * (a * d - b * c) / denom
}

fn entropy(labels: &[usize]) -> f64 {
    let n = labels.len() as f64;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Geometric-mean NMI from `I = H(x) + H(y) - H(x, y)`.
pub fn naive_nmi(x: &[usize], y: &[usize]) -> f64 {
    let hx = entropy(x);
    let hy = entropy(y);
    let joint: Vec<usize> = x.iter().zip(y).map(|(&a, &b)| a * 1_000_003 + b).collect();
    let hxy = entropy(&joint);
    if hx == 0.0 && hy == 0.0 {
        return 1.0;
    }
    if hx == 0.0 || hy == 0.0 {
        return 0.0;
    }
    ((hx + hy - hxy) / (hx * hy).sqrt()).clamp(0.0, 1.0)
}

/// Modularity over the full modularity matrix.
pub fn naive_modularity(adj: &[Vec<bool>], labels: &[usize]) -> f64 {
    let n = adj.len();
    let deg: Vec<f64> = adj
        .iter()
        .map(|r| r.iter().filter(|&&a| a).count() as f64)
        .collect();
    let two_m: f64 = deg.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                let a = if adj[i][j] { 1.0 } else { 0.0 };
                q += a - deg[i] * deg[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Best label matching by trying every injection of the smaller label set.
pub fn naive_agreement(x: &[usize], y: &[usize]) -> usize {
    let kx = x.iter().max().map_or(0, |&v| v + 1);
    let ky = y.iter().max().map_or(0, |&v| v + 1);
    let (small, large, ks, kl) = if kx <= ky {
        (x, y, kx, ky)
    } else {
        (y, x, ky, kx)
    };
    (0..kl)
        .permutations(ks)
        .map(|map| {
            (0..small.len())
                .filter(|&i| map[small[i]] == large[i])
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Column permutation maximizing the inner product with `reference`.
pub fn naive_relabel(state: &[Vec<f64>], reference: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let h = state[0].len();
    let score = |perm: &[usize]| -> f64 {
        state
            .iter()
            .zip(reference)
            .map(|(s, r)| (0..h).map(|k| s[perm[k]] * r[k]).sum::<f64>())
            .sum()
    };
    let mut best: Option<(Vec<usize>, f64)> = None;
    for perm in (0..h).permutations(h) {
        let s = score(&perm);
        if best.as_ref().is_none_or(|(_, b)| s > *b) {
            best = Some((perm, s));
        }
    }
    best.unwrap()
}

/// Same-partition check up to label renaming.
pub fn same_partition(x: &[usize], y: &[usize]) -> bool {
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    x.iter()
        .zip(y)
        .all(|(&a, &b)| *fwd.entry(a).or_insert(b) == b && *back.entry(b).or_insert(a) == a)
}

/// Straightforward agglomeration: communities as member lists, every pair
/// rescored from scratch each round, merging the best strictly positive
/// `2m E - d1 d2` with ties to the pair of lowest minimum members.
pub fn naive_greedy(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let two_m: i64 = adj.iter().flatten().filter(|&&a| a).count() as i64;
    let deg: Vec<i64> = adj
        .iter()
        .map(|r| r.iter().filter(|&&a| a).count() as i64)
        .collect();
    let mut comms: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for a in 0..comms.len() {
            for b in a + 1..comms.len() {
                let e: i64 = comms[a]
                    .iter()
                    .flat_map(|&i| comms[b].iter().map(move |&j| (i, j)))
                    .filter(|&(i, j)| adj[i][j])
                    .count() as i64;
                if e == 0 {
                    continue;
                }
                let da: i64 = comms[a].iter().map(|&i| deg[i]).sum();
                let db: i64 = comms[b].iter().map(|&i| deg[i]).sum();
                let gain = two_m * e - da * db;
                if best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, a, b));
                }
            }
        }
        match best {
            Some((gain, a, b)) if gain > 0 => {
                let moved = comms.remove(b);
                comms[a].extend(moved);
                // Keep communities ordered by lowest member.
                comms.sort_by_key(|c| *c.iter().min().unwrap());
            }
            _ => break,
        }
    }
    let mut labels = vec![0; n];
    for (c, members) in comms.iter().enumerate() {
        for &i in members {
            labels[i] = c;
        }
    }
    labels
}

/// Maximum modularity over every set partition (restricted growth strings).
pub fn exhaustive_max_modularity(adj: &[Vec<bool>]) -> f64 {
    fn rec(adj: &[Vec<bool>], labels: &mut Vec<usize>, k: usize, best: &mut f64) {
        if labels.len() == adj.len() {
            *best = best.max(naive_modularity(adj, labels));
            return;
        }
        for c in 0..=k {
            labels.push(c);
            rec(adj, labels, k.max(c + 1), best);
            labels.pop();
        }
    }
    let mut best = f64::NEG_INFINITY;
    rec(adj, &mut Vec::new(), 0, &mut best);
    best
}

// ---------------------------------------------------------------------------
// Oracle equivalence suite

fn rows_of(z: &MembershipMatrix) -> Vec<Vec<f64>> {
    z.rows().map(|r| r.to_vec()).collect()
}

pub fn oracle_conditional() -> Check {
    let mut r = rng(101);
    let clamp = ClampPolicy::default();
    for t in 0..INSTANCES {
        let n = r.random_range(2..=8);
        let h = r.random_range(2..=4);
        let (g, adj) = {
            let arg = r.random_range(0.0..1.0);
            random_graph(&mut r, n, arg)
        };
        let z = random_membership(&mut r, n, h);
        let alpha = if t % 4 == 0 {
            vec![1.0; h]
        } else {
            random_alpha(&mut r, h)
        };
        let rows = rows_of(&z);
        for i in 0..n {
            let got = node_conditional_log_density(&g, &z, i, &alpha, clamp)
                .map_err(|e| e.to_string())?;
            let want = naive_conditional(&adj, &rows, i, &alpha, clamp.epsilon());
            if !close(got, want, TOL) {
                return Err(format!("instance {t} node {i}: {got} vs {want}"));
            }
        }
    }
    Ok(())
}

pub fn oracle_log_ratio(mode: RatioMode) -> Check {
    let mut r = rng(202 + mode as u64);
    let clamp = ClampPolicy::default();
    for t in 0..INSTANCES {
        let n = r.random_range(2..=8);
        let h = r.random_range(2..=4);
        let (g, adj) = {
            let arg = r.random_range(0.0..1.0);
            random_graph(&mut r, n, arg)
        };
        let z = random_membership(&mut r, n, h);
        let alpha = random_alpha(&mut r, h);
        let rows = rows_of(&z);
        let i = r.random_range(0..n);
        let candidate = random_row(&mut r, h);
        let got = log_acceptance_ratio(&g, &z, i, &candidate, &alpha, mode, clamp);
        let want = naive_full_log_ratio(
            &adj,
            &rows,
            i,
            &candidate,
            &alpha,
            mode == RatioMode::Published,
            clamp.epsilon(),
        );
        if !close(got, want, TOL) {
            return Err(format!("instance {t} ({mode}): {got} vs {want}"));
        }
    }
    Ok(())
}

pub fn oracle_ari() -> Check {
    let mut r = rng(303);
    for t in 0..INSTANCES {
        let n = r.random_range(2..=8);
        let x = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let y = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let got = ari(&x, &y).map_err(|e| e.to_string())?;
        let want = naive_ari(&x, &y);
        if !close(got, want, TOL) {
            return Err(format!("instance {t} {x:?} {y:?}: {got} vs {want}"));
        }
    }
    Ok(())
}

pub fn oracle_nmi() -> Check {
    let mut r = rng(404);
    for t in 0..INSTANCES {
        let n = r.random_range(1..=8);
        let x = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let y = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let got = nmi(&x, &y).map_err(|e| e.to_string())?;
        let want = naive_nmi(&x, &y);
        if !close(got, want, TOL) {
            return Err(format!("instance {t} {x:?} {y:?}: {got} vs {want}"));
        }
    }
    Ok(())
}

pub fn oracle_modularity() -> Check {
    let mut r = rng(505);
    for t in 0..INSTANCES {
        let n = r.random_range(2..=8);
        let (g, adj) = random_graph_with_edge(&mut r, n);
        let labels = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let got = modularity_score(&g, &labels).map_err(|e| e.to_string())?;
        let want = naive_modularity(&adj, &labels);
        if !close(got, want, TOL) {
            return Err(format!("instance {t}: {got} vs {want}"));
        }
    }
    Ok(())
}

pub fn oracle_greedy() -> Check {
    let mut r = rng(606);
    for t in 0..INSTANCES {
        let n = r.random_range(2..=8);
        let (g, adj) = random_graph_with_edge(&mut r, n);
        let part = greedy_modularity(&g).map_err(|e| e.to_string())?;
        let want = naive_greedy(&adj);
        if !same_partition(&part.labels, &want) {
            return Err(format!("instance {t}: {:?} vs {want:?}", part.labels));
        }
        let q = naive_modularity(&adj, &want);
        if !close(part.modularity, q, TOL) {
            return Err(format!("instance {t}: Q {} vs {q}", part.modularity));
        }
        let best = modularity_baseline(&g).map_err(|e| e.to_string())?;
        let max_q = exhaustive_max_modularity(&adj);
        if best.modularity < part.modularity - TOL || best.modularity > max_q + TOL {
            return Err(format!(
                "instance {t}: baseline Q {} outside [{}, {max_q}]",
                best.modularity, part.modularity
            ));
        }
    }
    Ok(())
}

pub fn oracle_agreement_and_relabel() -> Check {
    let mut r = rng(707);
    for t in 0..INSTANCES {
        let n = r.random_range(1..=8);
        let x = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let y = {
            let arg = r.random_range(1..=4);
            random_labels(&mut r, n, arg)
        };
        let got = agreement_up_to_permutation(&x, &y).map_err(|e| e.to_string())?;
        let want = naive_agreement(&x, &y);
        if got != want {
            return Err(format!("agreement instance {t}: {got} vs {want}"));
        }

        let h = r.random_range(2..=4);
        let state = random_membership(&mut r, 5, h);
        let reference = random_membership(&mut r, 5, h);
        let perm = relabel_running(&state, &reference).map_err(|e| e.to_string())?;
        let (_, best) = naive_relabel(&rows_of(&state), &rows_of(&reference));
        let ours: f64 = (0..5)
            .map(|i| {
                (0..h)
                    .map(|k| state.row(i)[perm[k]] * reference.row(i)[k])
                    .sum::<f64>()
            })
            .sum();
        if !close(ours, best, TOL) {
            return Err(format!("relabel instance {t}: {ours} vs {best}"));
        }
    }
    Ok(())
}

pub fn oracle_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("conditional log density", oracle_conditional()),
        (
            "log acceptance ratio (published)",
            oracle_log_ratio(RatioMode::Published),
        ),
        (
            "log acceptance ratio (corrected)",
            oracle_log_ratio(RatioMode::Corrected),
        ),
        ("ari", oracle_ari()),
        ("nmi", oracle_nmi()),
        ("modularity", oracle_modularity()),
        ("greedy agglomeration", oracle_greedy()),
        ("agreement and relabel", oracle_agreement_and_relabel()),
    ]
}

// ---------------------------------------------------------------------------
// Invariant suite

fn check_simplex(z: &MembershipMatrix) -> Check {
    for (i, row) in z.rows().enumerate() {
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > 1e-9 || row.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(format!("row {i} off the simplex: {row:?}"));
        }
    }
    Ok(())
}

pub fn invariant_simplex_closure() -> Check {
    let zachary = netmix::graph::builtin_zachary();
    let sbm = generate_sbm(&SbmSpec::planted(vec![15, 10, 5], 0.7, 0.05).unwrap(), 3)
        .unwrap()
        .graph;
    let cases = [
        (&zachary, SamplerConfig::new(2).with_schedule(50, 200)),
        (
            &sbm,
            SamplerConfig::new(3)
                .with_alpha(vec![0.5, 1.0, 2.0])
                .with_schedule(20, 200)
                .with_seed(9),
        ),
        (
            &sbm,
            SamplerConfig {
                relabel: true,
                ..SamplerConfig::new(3).with_schedule(20, 100).with_seed(4)
            },
        ),
    ];
    for (g, cfg) in cases {
        let mut failure = None;
        let summary = run_chain_with(g, &cfg, |state| {
            if failure.is_none() {
                failure = check_simplex(state).err();
            }
        })
        .map_err(|e| e.to_string())?;
        if let Some(f) = failure {
            return Err(f);
        }
        check_simplex(&summary.mean)?;
    }
    Ok(())
}

pub fn invariant_cosine_scale() -> Check {
    let mut r = rng(808);
    for _ in 0..1000 {
        let h = r.random_range(2..=6);
        let x: Vec<f64> = (0..h).map(|_| r.random_range(0.0..1.0)).collect();
        let y: Vec<f64> = (0..h).map(|_| r.random_range(0.0..1.0)).collect();
        let c = r.random_range(1e-3..1e3);
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        let a = cosine_similarity(&x, &y).map_err(|e| e.to_string())?;
        let b = cosine_similarity(&scaled, &y).map_err(|e| e.to_string())?;
        if (a - b).abs() > 1e-12 {
            return Err(format!("scale {c}: {a} vs {b}"));
        }
        if a != cosine_similarity(&y, &x).map_err(|e| e.to_string())? {
            return Err("cosine not symmetric".into());
        }
    }
    Ok(())
}

pub fn invariant_permutation_equivariance() -> Check {
    let mut r = rng(909);
    let clamp = ClampPolicy::default();
    for t in 0..200 {
        let n = r.random_range(2..=12);
        let h = r.random_range(2..=4);
        let (g, _) = {
            let arg = r.random_range(0.0..1.0);
            random_graph(&mut r, n, arg)
        };
        let z = random_membership(&mut r, n, h);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        // Node perm[i] of the relabeled graph is node i of the original.
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let labels = (0..n).map(|k| format!("v{}", inverse[k])).collect();
        let edges: Vec<(usize, usize)> = g.edges().map(|(i, j)| (perm[i], perm[j])).collect();
        let g2 = Graph::from_edges(labels, edges).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<f64>> = (0..n).map(|k| z.row(inverse[k]).to_vec()).collect();
        let z2 = MembershipMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
        let a = graph_log_likelihood(&g, &z, clamp).map_err(|e| e.to_string())?;
        let b = graph_log_likelihood(&g2, &z2, clamp).map_err(|e| e.to_string())?;
        if (a - b).abs() > 1e-10 {
            return Err(format!("instance {t}: {a} vs {b}"));
        }
    }
    Ok(())
}

pub fn invariant_determinism() -> Check {
    let g = netmix::graph::builtin_zachary();
    for mode in [RatioMode::Published, RatioMode::Corrected] {
        let cfg = SamplerConfig::new(2)
            .with_schedule(100, 300)
            .with_seed(42)
            .with_alpha(vec![0.8, 1.5])
            .with_ratio_mode(mode);
        let a = run_chain(&g, &cfg).map_err(|e| e.to_string())?;
        let b = run_chain(&g, &cfg).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{mode} chains differ across reruns"));
        }
        let bits = |s: &netmix::ChainSummary| -> Vec<u64> {
            s.mean.rows().flatten().map(|v| v.to_bits()).collect()
        };
        if bits(&a) != bits(&b) {
            return Err("posterior means differ bitwise".into());
        }
    }
    let spec = SbmSpec::planted(vec![20, 20], 0.6, 0.1).unwrap();
    if generate_sbm(&spec, 5).unwrap().graph != generate_sbm(&spec, 5).unwrap().graph {
        return Err("SBM generation not deterministic".into());
    }
    Ok(())
}

pub fn invariant_decomposition() -> Check {
    let mut r = rng(1010);
    let clamp = ClampPolicy::default();
    for t in 0..200 {
        let n = r.random_range(2..=15);
        let h = r.random_range(2..=4);
        let (g, _) = {
            let arg = r.random_range(0.0..1.0);
            random_graph(&mut r, n, arg)
        };
        let z = random_membership(&mut r, n, h);
        let flat = vec![1.0; h];
        let total = graph_log_likelihood(&g, &z, clamp).map_err(|e| e.to_string())?;
        let mut half = 0.0;
        for i in 0..n {
            half +=
                node_conditional_log_density(&g, &z, i, &flat, clamp).map_err(|e| e.to_string())?;
        }
        half /= 2.0;
        if (total - half).abs() > 1e-9 {
            return Err(format!("instance {t}: {total} vs {half}"));
        }
    }
    Ok(())
}

pub fn invariant_suite() -> Vec<(&'static str, Check)> {
    vec![
        (
            "simplex closure of sampler states",
            invariant_simplex_closure(),
        ),
        ("cosine scale invariance", invariant_cosine_scale()),
        (
            "likelihood permutation equivariance",
            invariant_permutation_equivariance(),
        ),
        ("seed determinism", invariant_determinism()),
        (
            "likelihood/conditional decomposition",
            invariant_decomposition(),
        ),
    ]
}

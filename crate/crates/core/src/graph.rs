//! Undirected simple graphs, text ingestion, and the bundled Zachary dataset.
//!
//! Nodes carry arbitrary string labels mapped to dense indices in
//! first-appearance order. Adjacency is kept as sorted neighbor lists, so a
//! full scan of a node's dyads is a linear merge.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

const ZACHARY_EDGES: &str = include_str!("../data/zachary.txt");
const ZACHARY_FACTIONS: &str = include_str!("../data/zachary_factions.csv");

/// An undirected graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from node labels and index pairs.
    ///
    /// Parallel edges collapse to one; self-loops and out-of-range indices
    /// are rejected.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate node label `{label}`"),
                });
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::DimensionMismatch(format!(
                    "edge ({u},{v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    label: labels[u].clone(),
                });
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            labels,
            index,
            neighbors,
            edge_count: edge_count / 2,
        })
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Sorted neighbor indices of node `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Looks up adjacency by label; unknown labels are never adjacent.
    pub fn has_edge_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(i, list)| {
            list.iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Visits every `j != i` together with `a_ij`, in index order.
    pub(crate) fn for_each_dyad<F: FnMut(usize, bool)>(&self, i: usize, mut f: F) {
        let mut adj = self.neighbors[i].iter().copied().peekable();
        for j in 0..self.n() {
            if j == i {
                continue;
            }
            let linked = adj.peek() == Some(&j);
            if linked {
                adj.next();
            }
            f(j, linked);
        }
    }

    /// Serializes as an edge list readable by [`parse_edge_list`].
    ///
    /// Each node is first introduced, in index order, by one edge, so a graph
    /// read by [`parse_edge_list`] comes back with the same indices; the
    /// remaining edges follow in lexicographic order. Isolated nodes have no
    /// line and are lost; use [`Graph::to_adjacency_csv`] when they must
    /// survive.
    pub fn to_edge_list(&self) -> String {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut first = Vec::new();
        for k in 0..n {
            if seen[k] {
                continue;
            }
            let Some(&lowest) = self.neighbors[k].first() else {
                continue;
            };
            // A lower neighbor is already introduced; otherwise the node
            // appeared alongside its successor.
            let edge = if lowest < k {
                (lowest, k)
            } else if self.has_edge(k, k + 1) {
                (k, k + 1)
            } else {
                (k, lowest)
            };
            seen[edge.0] = true;
            seen[edge.1] = true;
            first.push(edge);
        }
        let mut out = String::new();
        let introduced: HashSet<(usize, usize)> = first.iter().copied().collect();
        let rest = self.edges().filter(|e| !introduced.contains(e));
        for (i, j) in first.iter().copied().chain(rest) {
            let _ = writeln!(out, "{} {}", self.labels[i], self.labels[j]);
        }
        out
    }

    /// Serializes as a comma-separated 0/1 matrix readable by
    /// [`parse_adjacency_csv`]. Labels become `"1".."n"` on re-read.
    pub fn to_adjacency_csv(&self) -> String {
        let n = self.n();
        let mut out = String::with_capacity(n * n * 2);
        for i in 0..n {
            let mut row = vec!["0"; n];
            for &j in &self.neighbors[i] {
                row[j] = "1";
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn tokens(line: &str) -> Option<&str> {
    let content = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let trimmed = content.trim();
    (!trimmed.is_empty()).then_some(trimmed)
}

/// Parses a whitespace-separated edge list.
///
/// Blank lines and `#` comments are skipped. Nodes are indexed in order of
/// first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(label) {
            return i;
        }
        let i = labels.len();
        labels.push(label.to_owned());
        index.insert(label.to_owned(), i);
        i
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let Some(content) = tokens(raw) else {
            continue;
        };
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two node labels, found {} tokens", parts.len()),
            });
        }
        if parts[0] == parts[1] {
            return Err(Error::SelfLoop {
                line,
                label: parts[0].to_owned(),
            });
        }
        let u = intern(parts[0], &mut labels);
        let v = intern(parts[1], &mut labels);
        edges.push((u, v));
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Graph::from_edges(labels, edges)
}

/// Parses a square, symmetric, zero-diagonal 0/1 matrix with comma-separated
/// rows. Nodes are labelled `"1".."n"`.
pub fn parse_adjacency_csv(text: &str) -> Result<Graph> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row = trimmed
            .split(',')
            .map(|cell| match cell.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse {
                    line,
                    message: format!("expected 0 or 1, found `{other}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    for (row, values) in rows.iter().enumerate() {
        if values.len() != n {
            return Err(Error::NotSquare {
                row,
                found: values.len(),
                expected: n,
            });
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if rows[i][i] {
            return Err(Error::NonzeroDiagonal { i });
        }
        for j in (i + 1)..n {
            if rows[i][j] != rows[j][i] {
                return Err(Error::Asymmetric { i, j });
            }
            if rows[i][j] {
                edges.push((i, j));
            }
        }
    }
    let labels = (1..=n).map(|k| k.to_string()).collect();
    Graph::from_edges(labels, edges)
}

/// Reads a graph file, choosing the adjacency-CSV parser for `.csv` paths and
/// the edge-list parser otherwise.
pub fn read_graph_file(path: &std::path::Path) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_adjacency_csv(&text)
    } else {
        parse_edge_list(&text)
    }
}

/// Zachary's karate club friendship network: 34 members labelled `"1".."34"`,
/// 78 ties.
pub fn builtin_zachary() -> Graph {
    let g = parse_edge_list(ZACHARY_EDGES).expect("bundled Zachary edge list is valid");
    // Relabel into numeric order so index i carries label i+1.
    let labels: Vec<String> = (1..=34).map(|k| k.to_string()).collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(i, j)| {
            let a: usize = g.label(i).parse().expect("numeric label");
            let b: usize = g.label(j).parse().expect("numeric label");
            (a - 1, b - 1)
        })
        .collect();
    Graph::from_edges(labels, edges).expect("bundled Zachary edge list is valid")
}

/// Observed post-fission faction of each Zachary member, indexed like
/// [`builtin_zachary`]: 0 for Mr. Hi's group, 1 for the officers' group.
pub fn zachary_factions() -> Vec<usize> {
    let table = crate::metrics::parse_label_csv(ZACHARY_FACTIONS)
        .expect("bundled Zachary faction table is valid");
    let mut out = vec![0; 34];
    for (label, community) in table {
        let k: usize = label.parse().expect("numeric label");
        out[k - 1] = community;
    }
    out
}

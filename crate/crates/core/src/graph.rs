//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! A [`Graph`] keeps sorted neighbor lists for iteration and a dense
//! adjacency matrix for constant-time dyad queries. Values are immutable once
//! built; editing produces a new graph (see [`Graph::toggle_dyads`]) or goes
//! through a single-owner [`GraphBuilder`].

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dyad {
    u: usize,
    v: usize,
}

impl Dyad {
    /// Builds the dyad `{a, b}` in either order. Rejects `a == b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidDyad { u: a, v: b, n: 0 });
        }
        Ok(Self {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Position of this dyad in the colexicographic order of all
    /// `n(n-1)/2` dyads: `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn index(&self) -> usize {
        self.v * (self.v - 1) / 2 + self.u
    }

    /// Inverse of [`Dyad::index`].
    pub fn from_index(index: usize) -> Self {
        // largest v with v(v-1)/2 <= index
        let mut v = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
        while v * (v - 1) / 2 > index {
            v -= 1;
        }
        while (v + 1) * v / 2 <= index {
            v += 1;
        }
        Self {
            u: index - v * (v - 1) / 2,
            v,
        }
    }
}

/// Number of dyads on `n` vertices.
pub fn dyad_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edge_count: usize,
    neighbors: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 0..n {
            for u in 0..v {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(v - 1, v);
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(v - 1, v);
        }
        if n >= 3 {
            b.add_edge(n - 1, 0);
        }
        b.build()
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(0, v);
        }
        b.build()
    }

    /// Builds a graph from explicit pairs. Duplicates collapse; self-loops and
    /// out-of-range labels are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidDyad { u, v, n });
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    /// Graph whose edge set is given by the low `n(n-1)/2` bits of `mask`,
    /// bit `i` standing for [`Dyad::from_index`]`(i)`.
    pub fn from_dyad_mask(n: usize, mask: u64) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 0..dyad_count(n) {
            if mask >> i & 1 == 1 {
                let d = Dyad::from_index(i);
                b.add_edge(d.u, d.v);
            }
        }
        b.build()
    }

    /// Inverse of [`Graph::from_dyad_mask`]. Requires `n <= 11`.
    pub fn dyad_mask(&self) -> u64 {
        assert!(dyad_count(self.n) <= 64, "dyad mask needs n <= 11");
        self.edges().fold(0u64, |m, d| m | 1 << d.index())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn non_edge_count(&self) -> usize {
        dyad_count(self.n) - self.edge_count
    }

    pub fn density(&self) -> f64 {
        let d = dyad_count(self.n);
        if d == 0 {
            0.0
        } else {
            self.edge_count as f64 / d as f64
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// Edges in increasing `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Dyad> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Dyad { u, v })
        })
    }

    /// Non-edges in increasing `(u, v)` order.
    pub fn non_edges(&self) -> impl Iterator<Item = Dyad> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.matrix[u * self.n + v])
                .map(move |v| Dyad { u, v })
        })
    }

    /// Flips every listed dyad between edge and non-edge.
    pub fn toggle_dyads(&self, dyads: &[Dyad]) -> Result<Self> {
        let mut seen = HashSet::with_capacity(dyads.len());
        for d in dyads {
            if d.v >= self.n {
                return Err(Error::InvalidDyad {
                    u: d.u,
                    v: d.v,
                    n: self.n,
                });
            }
            if !seen.insert(*d) {
                return Err(Error::DuplicateDyad { u: d.u, v: d.v });
            }
        }
        let mut b = GraphBuilder::from_graph(self);
        for d in dyads {
            b.toggle(d.u, d.v);
        }
        Ok(b.build())
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut b = GraphBuilder::new(self.n);
        for d in self.edges() {
            b.add_edge(perm[d.u], perm[d.v]);
        }
        b.build()
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// order given.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.neighbors[v] {
                let j = position[w];
                if j != usize::MAX && j > i {
                    b.add_edge(i, j);
                }
            }
        }
        b.build()
    }

    pub fn complement(&self) -> Self {
        let mut b = GraphBuilder::new(self.n);
        for d in self.non_edges() {
            b.add_edge(d.u, d.v);
        }
        b.build()
    }

    /// Edge-list text: an `n=<count>` header followed by one `u v` line per
    /// edge. Parses back with [`from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for d in self.edges() {
            let _ = writeln!(out, "{} {}", d.u, d.v);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// Single-owner mutable graph, frozen into a [`Graph`] by [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    matrix: Vec<bool>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            matrix: vec![false; n * n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self {
            n: g.n,
            matrix: g.matrix.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
    }

    pub fn toggle(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let cur = self.matrix[u * self.n + v];
        self.matrix[u * self.n + v] = !cur;
        self.matrix[v * self.n + u] = !cur;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let neighbors: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).filter(|&v| self.matrix[u * n + v]).collect())
            .collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n,
            edge_count,
            neighbors,
            matrix: self.matrix,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().map(|d| [d.u, d.v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::from_edges(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

fn parse_header(line: &str) -> Option<&str> {
    let rest = line.strip_prefix('n')?.trim_start();
    Some(rest.strip_prefix('=')?.trim())
}

/// Parses the whitespace-separated edge-list format: one `u v` pair of
/// 0-indexed labels per line, `#` comment lines, and an optional `n=<count>`
/// header declaring trailing isolated vertices.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(value) = parse_header(line) {
            let n = value.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex count header {line:?}"),
            })?;
            declared = Some((n, line_no));
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut label = || -> Result<usize> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex labels".into(),
            })?;
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("vertex label {tok:?} is not a non-negative integer"),
            })
        };
        let u = label()?;
        let v = label()?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected exactly two vertex labels".into(),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        pairs.push((u, v));
    }
    let needed = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some((n, line)) if n < needed => {
            return Err(Error::Parse {
                line,
                message: format!("header declares n={n} but label {} appears", needed - 1),
            })
        }
        Some((n, _)) => n,
        None => needed,
    };
    Graph::from_edges(n, pairs)
}

/// A graph ingested from arbitrary string labels, with the sidecar table
/// mapping dense ids back to the original names.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Like [`from_edge_list`] but each token is an opaque vertex name; names get
/// dense ids in order of first appearance.
pub fn from_labeled_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: "expected exactly two vertex labels".into(),
            });
        }
        if tokens[0] == tokens[1] {
            let vertex = ids.get(tokens[0]).copied().unwrap_or(labels.len());
            return Err(Error::SelfLoop {
                line: line_no,
                vertex,
            });
        }
        let mut id = |name: &str| {
            *ids.entry(name.to_owned()).or_insert_with(|| {
                labels.push(name.to_owned());
                labels.len() - 1
            })
        };
        let u = id(tokens[0]);
        let v = id(tokens[1]);
        pairs.push((u, v));
    }
    let graph = Graph::from_edges(labels.len(), pairs)?;
    Ok(LabeledGraph { graph, labels })
}

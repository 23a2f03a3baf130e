//! Trees, edge-list ingestion, random generation and the combinatorial
//! primitives the spectral code is built on.

mod blocks;
mod branches;
mod parse;
mod paths;
mod prufer;

use std::fmt;

pub use blocks::{biconnected_components, block_decomposition, BlockDecomposition};
pub use branches::{branches_at, Branch, BranchSet};
pub use parse::parse_edge_list;
pub use paths::{path_edges, shared_path_count, Edge, RootedTree};
pub use prufer::{prufer_decode, random_tree};

/// Internal vertex id, contiguous in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("Empty: a tree needs at least 2 vertices, found {vertices}")]
    Empty { vertices: usize },
    #[error("InvalidSize: tree size must be at least 2, got {0}")]
    InvalidSize(usize),
    #[error("Syntax (line {line}): {message}")]
    Syntax { line: usize, message: String },
    #[error("SelfLoop{}: vertex {label} is joined to itself", at_line(*.line))]
    SelfLoop { label: u64, line: Option<usize> },
    #[error("DuplicateEdge{}: edge {a}-{b} appears twice", at_line(*.line))]
    DuplicateEdge { a: u64, b: u64, line: Option<usize> },
    #[error("HasCycle{}: edge {a}-{b} closes a cycle", at_line(*.line))]
    HasCycle { a: u64, b: u64, line: Option<usize> },
    #[error("NotConnected: {components} components")]
    NotConnected { components: usize },
    #[error("VertexOutOfRange: vertex {vertex} not in 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("ArgumentIsRoot: vertex {0} coincides with the root")]
    ArgumentIsRoot(Vertex),
    #[error("UnknownVertex: no vertex labelled {0}")]
    UnknownVertex(u64),
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

impl GraphError {
    /// Variant name, used as a stable diagnostic tag.
    pub fn kind(&self) -> &'static str {
        match self {
            GraphError::Empty { .. } => "Empty",
            GraphError::InvalidSize(_) => "InvalidSize",
            GraphError::Syntax { .. } => "Syntax",
            GraphError::SelfLoop { .. } => "SelfLoop",
            GraphError::DuplicateEdge { .. } => "DuplicateEdge",
            GraphError::HasCycle { .. } => "HasCycle",
            GraphError::NotConnected { .. } => "NotConnected",
            GraphError::VertexOutOfRange { .. } => "VertexOutOfRange",
            GraphError::ArgumentIsRoot(_) => "ArgumentIsRoot",
            GraphError::UnknownVertex(_) => "UnknownVertex",
        }
    }
}

/// A labelled tree on `n ≥ 2` vertices.
///
/// Vertices are `0..n` internally; `labels[v]` is the external (1-based,
/// positive) label, and labels are increasing in `v`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    labels: Vec<u64>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Tree {
    /// Builds a tree on `0..n` labelled `1..=n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let labels = (1..=n as u64).collect();
        let lines = vec![None; edges.len()];
        Self::build(labels, edges, &lines)
    }

    pub(crate) fn build(
        labels: Vec<u64>,
        edges: &[(Vertex, Vertex)],
        lines: &[Option<usize>],
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if n < 2 {
            return Err(GraphError::Empty { vertices: n });
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut dsu = DisjointSets::new(n);
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let line = lines.get(idx).copied().flatten();
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    label: labels[u],
                    line,
                });
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge {
                    a: labels[u],
                    b: labels[v],
                    line,
                });
            }
            if !dsu.union(u, v) {
                return Err(GraphError::HasCycle {
                    a: labels[u],
                    b: labels[v],
                    line,
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push(e);
        }
        let components = dsu.count();
        if components != 1 {
            return Err(GraphError::NotConnected { components });
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        normalized.sort_unstable();
        Ok(Self {
            labels,
            edges: normalized,
            adjacency,
        })
    }

    /// Path `1 – 2 – … – n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with the center at vertex 0 (label 1).
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    /// Two adjacent centers (vertices 0 and 1), each carrying `leaves` pendant
    /// vertices.
    pub fn double_star(leaves: usize) -> Result<Self, GraphError> {
        let mut edges = vec![(0, 1)];
        for l in 0..leaves {
            edges.push((0, 2 + l));
            edges.push((1, 2 + leaves + l));
        }
        Self::from_edges(2 + 2 * leaves, &edges)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adjacency
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: Vertex) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn vertex_of(&self, label: u64) -> Result<Vertex, GraphError> {
        self.labels
            .binary_search(&label)
            .map_err(|_| GraphError::UnknownVertex(label))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Canonical edge-list text: one `a b` line per edge with `a < b`, using
    /// external labels, sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut pairs: Vec<(u64, u64)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    fn count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_degrees() {
        let t = Tree::path(4).unwrap();
        assert_eq!(t.degrees(), vec![1, 2, 2, 1]);
        assert_eq!(t.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(t.degrees().iter().sum::<usize>(), 2 * (t.n() - 1));
    }

    #[test]
    fn rejects_bad_edge_sets() {
        assert!(matches!(
            Tree::from_edges(1, &[]),
            Err(GraphError::Empty { vertices: 1 })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(GraphError::HasCycle { .. })
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (2, 3)]),
            Err(GraphError::NotConnected { components: 2 })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn double_star_shape() {
        let t = Tree::double_star(3).unwrap();
        assert_eq!(t.n(), 8);
        assert_eq!(t.degree(0), 4);
        assert_eq!(t.degree(1), 4);
        assert!(t.is_adjacent(0, 1));
    }

    #[test]
    fn edge_list_is_canonical() {
        let t = Tree::from_edges(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(t.to_edge_list(), "1 2\n2 3\n");
    }
}

use std::collections::BTreeSet;

use super::{GraphError, Tree, Vertex};

/// Undirected edge stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

/// A tree hung from a root, with parent pointers and depths.
///
/// For vertices `i`, `j` the paths `i → root` and `j → root` share exactly
/// the edges from their lowest common ancestor up to the root, so
/// `|P_{i,j,root}| = depth(lca(i, j))`.
#[derive(Debug, Clone)]
pub struct RootedTree {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn new(t: &Tree, root: Vertex) -> Self {
        let n = t.n();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            for &w in t.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
        Self { root, parent, depth }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Distance from `v` to the root.
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn lowest_common_ancestor(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root vertex has a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root vertex has a parent");
        }
        while a != b {
            a = self.parent[a].expect("distinct vertices at equal depth are not the root");
            b = self.parent[b].expect("distinct vertices at equal depth are not the root");
        }
        a
    }

    /// Number of edges shared by the paths `i → root` and `j → root`.
    pub fn shared_edges(&self, i: Vertex, j: Vertex) -> usize {
        self.depth[self.lowest_common_ancestor(i, j)]
    }
}

/// Edge set of the unique `i`–`j` path.
pub fn path_edges(t: &Tree, i: Vertex, j: Vertex) -> BTreeSet<Edge> {
    let rooted = RootedTree::new(t, j);
    let mut edges = BTreeSet::new();
    let mut v = i;
    while let Some(p) = rooted.parent(v) {
        edges.insert((v.min(p), v.max(p)));
        v = p;
    }
    edges
}

/// `|P_{i,j,k}|`, the number of edges lying on both the `i → k` and the
/// `j → k` path.
pub fn shared_path_count(t: &Tree, i: Vertex, j: Vertex, k: Vertex) -> Result<usize, GraphError> {
    for v in [i, j, k] {
        t.check_vertex(v)?;
    }
    for v in [i, j] {
        if v == k {
            return Err(GraphError::ArgumentIsRoot(v));
        }
    }
    Ok(RootedTree::new(t, k).shared_edges(i, j))
}

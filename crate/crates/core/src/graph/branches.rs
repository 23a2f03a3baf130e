use super::{Tree, Vertex};

/// One connected component of `T∖k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    /// Vertices in increasing id order.
    pub vertices: Vec<Vertex>,
    /// The unique vertex of the branch adjacent to the root.
    pub anchor: Vertex,
}

impl Branch {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` within [`vertices`](Self::vertices).
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// The branches of a tree at a root vertex, ordered by anchor id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSet {
    pub root: Vertex,
    pub branches: Vec<Branch>,
    /// `component[v]` is the index of the branch holding `v`; `None` for the root.
    pub component: Vec<Option<usize>>,
}

impl BranchSet {
    pub fn branch_of(&self, v: Vertex) -> Option<&Branch> {
        self.component[v].map(|c| &self.branches[c])
    }
}

/// Splits `t` at `k`. There is one branch per neighbor of `k`.
///
/// # Panics
///
/// If `k` is not a vertex of `t`.
pub fn branches_at(t: &Tree, k: Vertex) -> BranchSet {
    assert!(k < t.n(), "vertex {k} out of range");
    let mut component = vec![None; t.n()];
    let mut branches = Vec::with_capacity(t.degree(k));
    let mut stack = Vec::new();
    for (idx, &anchor) in t.neighbors(k).iter().enumerate() {
        let mut vertices = vec![anchor];
        component[anchor] = Some(idx);
        stack.push((anchor, k));
        while let Some((v, parent)) = stack.pop() {
            for &w in t.neighbors(v) {
                if w != parent {
                    component[w] = Some(idx);
                    vertices.push(w);
                    stack.push((w, v));
                }
            }
        }
        vertices.sort_unstable();
        branches.push(Branch { vertices, anchor });
    }
    BranchSet {
        root: k,
        branches,
        component,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_of_p3() {
        let t = Tree::path(3).unwrap();
        let bs = branches_at(&t, 1);
        assert_eq!(bs.branches.len(), 2);
        assert_eq!(bs.branches[0].vertices, vec![0]);
        assert_eq!(bs.branches[1].vertices, vec![2]);
    }

    #[test]
    fn p4_at_third_vertex() {
        let t = Tree::path(4).unwrap();
        let bs = branches_at(&t, 2);
        assert_eq!(
            bs.branches,
            vec![
                Branch {
                    vertices: vec![0, 1],
                    anchor: 1
                },
                Branch {
                    vertices: vec![3],
                    anchor: 3
                },
            ]
        );
        assert_eq!(bs.component, vec![Some(0), Some(0), None, Some(1)]);
    }

    #[test]
    fn star_at_leaf() {
        let t = Tree::star(3).unwrap();
        let bs = branches_at(&t, 2);
        assert_eq!(bs.branches.len(), 1);
        assert_eq!(bs.branches[0].vertices, vec![0, 1, 3]);
        assert_eq!(bs.branches[0].anchor, 0);
    }
}

use std::collections::BTreeSet;

use super::{Tree, Vertex};

/// Articulation points and blocks (maximal biconnected vertex sets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub articulation_points: BTreeSet<Vertex>,
    /// Each block as a sorted vertex list; blocks sorted lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
}

/// Block decomposition of a tree. Every edge is a block and every vertex of
/// degree at least two is an articulation point.
pub fn block_decomposition(t: &Tree) -> BlockDecomposition {
    biconnected_components(t.adjacency())
}

/// Hopcroft–Tarjan biconnected components on an undirected simple graph,
/// iterative so deep paths do not overflow the stack. Isolated vertices form
/// no block.
pub fn biconnected_components(adjacency: &[Vec<Vertex>]) -> BlockDecomposition {
    let n = adjacency.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut articulation_points = BTreeSet::new();
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();

    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(start, None, 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < adjacency[v].len() {
                frame.2 += 1;
                let w = adjacency[v][idx];
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    if v == start {
                        root_children += 1;
                    }
                    stack.push((w, Some(v), 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                let Some(p) = parent else { continue };
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    if p != start {
                        articulation_points.insert(p);
                    }
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (p, v) {
                            break;
                        }
                    }
                    blocks.push(block.into_iter().collect::<Vec<_>>());
                }
            }
        }
        if root_children >= 2 {
            articulation_points.insert(start);
        }
    }
    blocks.sort();
    BlockDecomposition {
        articulation_points,
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_tree;

    #[test]
    fn p4() {
        let d = block_decomposition(&Tree::path(4).unwrap());
        assert_eq!(d.articulation_points.into_iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn star_and_p2() {
        let d = block_decomposition(&Tree::star(3).unwrap());
        assert_eq!(d.articulation_points.into_iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(d.blocks.len(), 3);
        let d = block_decomposition(&Tree::path(2).unwrap());
        assert!(d.articulation_points.is_empty());
        assert_eq!(d.blocks, vec![vec![0, 1]]);
    }

    #[test]
    fn trees_follow_degree_rule() {
        for seed in 0..30 {
            let t = random_tree(2 + (seed as usize % 25), seed).unwrap();
            let d = block_decomposition(&t);
            let expected: BTreeSet<_> = (0..t.n()).filter(|&v| t.degree(v) >= 2).collect();
            assert_eq!(d.articulation_points, expected);
            let edges: Vec<Vec<Vertex>> = t.edges().iter().map(|&(a, b)| vec![a, b]).collect();
            assert_eq!(d.blocks, edges);
        }
    }

    #[test]
    fn general_graph_bowtie() {
        // Two triangles sharing vertex 2, plus a pendant 5 on 4.
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)];
        let mut adj = vec![Vec::new(); 6];
        for (a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let d = biconnected_components(&adj);
        assert_eq!(d.articulation_points.into_iter().collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]]);
    }
}

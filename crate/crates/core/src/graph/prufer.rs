use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GraphError, Tree, Vertex};

/// Uniformly random labelled tree on `n` vertices.
///
/// The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`),
/// which is portable across platforms. The `n − 2` Prüfer entries are drawn
/// in order with `gen_range(0..n)` and decoded with [`prufer_decode`], so a
/// given `(n, seed)` always produces the same tree.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

/// Decodes a Prüfer sequence of length `n − 2` over `0..n`.
pub fn prufer_decode(n: usize, code: &[Vertex]) -> Result<Tree, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidSize(n));
    }
    if code.len() != n - 2 {
        return Err(GraphError::InvalidSize(code.len() + 2));
    }
    if let Some(&bad) = code.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n });
    }
    let mut remaining = vec![1usize; n];
    for &v in code {
        remaining[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer code always leaves a leaf");
        edges.push((leaf, v));
        remaining[v] -= 1;
        if remaining[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    Tree::from_edges(n, &edges)
}

use crate::graph::Tree;
use crate::linalg::SymMatrix;

/// `𝓛`: unit diagonal, `−1/√(d_u d_v)` on edges.
pub fn normalized_laplacian(t: &Tree) -> SymMatrix {
    let d = t.degrees();
    SymMatrix::from_fn(t.n(), |u, v| {
        if u == v {
            1.0
        } else if t.is_adjacent(u, v) {
            -1.0 / ((d[u] * d[v]) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `L = D − A`.
pub fn combinatorial_laplacian(t: &Tree) -> SymMatrix {
    SymMatrix::from_fn(t.n(), |u, v| {
        if u == v {
            t.degree(u) as f64
        } else if t.is_adjacent(u, v) {
            -1.0
        } else {
            0.0
        }
    })
}

/// `D^{-1/2} L D^{-1/2}`, the second route to `𝓛`.
pub fn sandwich_laplacian(t: &Tree) -> SymMatrix {
    let inv_sqrt: Vec<f64> = t.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    combinatorial_laplacian(t).scale_sym(&inv_sqrt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_tree;

    #[test]
    fn small_fixtures() {
        let p2 = normalized_laplacian(&Tree::path(2).unwrap());
        assert_eq!(p2.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);

        let p3 = normalized_laplacian(&Tree::path(3).unwrap());
        let e = -1.0 / 2f64.sqrt();
        assert_eq!(
            p3.to_rows(),
            vec![vec![1.0, e, 0.0], vec![e, 1.0, e], vec![0.0, e, 1.0]]
        );

        let k13 = normalized_laplacian(&Tree::star(3).unwrap());
        for leaf in 1..4 {
            assert_eq!(k13.get(0, leaf), -1.0 / 3f64.sqrt());
            assert_eq!(k13.get(leaf, leaf), 1.0);
        }
        assert_eq!(k13.get(1, 2), 0.0);
    }

    #[test]
    fn combinatorial_of_p3() {
        let l = combinatorial_laplacian(&Tree::path(3).unwrap());
        assert_eq!(
            l.to_rows(),
            vec![vec![1.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 1.0]]
        );
    }

    #[test]
    fn sandwich_identity() {
        for seed in 0..20 {
            let t = random_tree(3 + seed as usize, seed).unwrap();
            let diff = normalized_laplacian(&t).max_abs_diff(&sandwich_laplacian(&t));
            assert!(diff <= 1e-14, "seed {seed}: {diff}");
        }
    }
}

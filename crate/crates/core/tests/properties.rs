use perron_tree::graph::{random_tree, Tree};
use perron_tree::spectral::{lambda1, normalized_laplacian, oracle_lambda1, TreeKind};
use perron_tree::{parse_edge_list, Tolerances};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda1_matches_oracle(n in 2usize..40, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        prop_assert!((r.lambda1 - oracle_lambda1(&t, &tol()).unwrap()).abs() <= 1e-8);
        // λ₁ ≤ 1 for every tree on three or more vertices.
        prop_assert!(r.lambda1 > 0.0 && (n == 2 || r.lambda1 <= 1.0 + 1e-12));
        prop_assert_eq!(r.gamma.is_some(), r.classification.kind == TreeKind::Type2);
        if let Some(gamma) = r.gamma {
            prop_assert!((0.0..=1.0).contains(&gamma));
        }
    }

    #[test]
    fn eigenvector_is_normalized(n in 2usize..40, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        let norm: f64 = r.g.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        let (top, _) = r.g.iter().enumerate().fold((0, 0.0f64), |(bi, bv), (i, &x)| {
            if x.abs() > bv.abs() + 1e-15 { (i, x) } else { (bi, bv) }
        });
        prop_assert!(r.g[top] > 0.0);
        let lg = normalized_laplacian(&t).mul_vec(&r.g);
        for (a, b) in lg.iter().zip(&r.g) {
            prop_assert!((a - r.lambda1 * b).abs() <= 1e-8);
        }
    }

    #[test]
    fn relabeling_preserves_the_spectrum(n in 2usize..25, seed in any::<u64>(), stride in 1u64..50) {
        let t = random_tree(n, seed).unwrap();
        let shifted: String = t
            .edges()
            .iter()
            .map(|&(a, b)| format!("{} {}\n", 1000 + stride * a as u64, 1000 + stride * b as u64))
            .collect();
        let u: Tree = parse_edge_list(&shifted).unwrap();
        let (a, b) = (lambda1(&t, &tol()).unwrap(), lambda1(&u, &tol()).unwrap());
        prop_assert!((a.lambda1 - b.lambda1).abs() <= 1e-10);
        prop_assert_eq!(a.classification.characteristic, b.classification.characteristic);
    }
}

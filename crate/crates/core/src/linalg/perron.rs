use super::{LinalgError, SymMatrix};
use crate::config::PERRON_MAX_ITERATIONS;
use crate::Tolerances;

/// Spectral radius and positive unit eigenvector of an entrywise positive
/// symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Perron {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Power iteration from the uniform vector.
///
/// Stops when successive Rayleigh quotients agree to `tol.perron · max(1, ρ)`
/// and the residual `‖Ax − ρx‖_∞` is below `tol.perron_residual · max(1, ρ)`.
/// The iteration order is fixed, so results are bit-reproducible.
pub fn perron(a: &SymMatrix, tol: &Tolerances) -> Result<Perron, LinalgError> {
    let m = a.order();
    if m == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    for i in 0..m {
        for j in i..m {
            let value = a.get(i, j);
            if value <= 0.0 {
                return Err(LinalgError::NotPositiveMatrix {
                    row: i,
                    col: j,
                    value,
                });
            }
        }
    }

    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut previous = f64::NAN;
    for _ in 0..PERRON_MAX_ITERATIONS {
        let y = a.mul_vec(&x);
        let rho: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let scale = rho.max(1.0);
        let residual = x
            .iter()
            .zip(&y)
            .fold(0.0f64, |r, (xi, yi)| r.max((yi - rho * xi).abs()));
        if (rho - previous).abs() <= tol.perron * scale && residual <= tol.perron_residual * scale {
            return Ok(Perron {
                value: rho,
                vector: x,
            });
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
        previous = rho;
    }
    Err(LinalgError::NoConvergence {
        method: "power iteration",
        limit: PERRON_MAX_ITERATIONS,
        unit: "iterations",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{jacobi_eigen, rank_one_downdate};
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn one_by_one() {
        let p = perron(&SymMatrix::from_rows(&[vec![3.5]]).unwrap(), &tol()).unwrap();
        assert_eq!(p.value, 3.5);
        assert_eq!(p.vector, vec![1.0]);
    }

    #[test]
    fn two_by_two() {
        // λ² − 4λ + 2 = 0 → 2 ± √2
        let r2 = 2f64.sqrt();
        let a = SymMatrix::from_rows(&[vec![2.0, r2], vec![r2, 2.0]]).unwrap();
        let p = perron(&a, &tol()).unwrap();
        assert!((p.value - (2.0 + r2)).abs() < 1e-12);
        assert!((p.value - 3.414_213_562_4).abs() < 1e-10);
    }

    #[test]
    fn star_branch() {
        // Symmetric vectors (a, b, b) reduce to [[3, 2√3], [√3, 3]]:
        // λ² − 6λ + 3 = 0 → 3 + √6.
        let r3 = 3f64.sqrt();
        let a = SymMatrix::from_rows(&[vec![3.0, r3, r3], vec![r3, 2.0, 1.0], vec![r3, 1.0, 2.0]]).unwrap();
        let p = perron(&a, &tol()).unwrap();
        assert!((p.value - (3.0 + 6f64.sqrt())).abs() < 1e-12);
        assert!((p.value - 5.449_489_7).abs() < 1e-7);
        assert!(p.vector.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn rejects_nonpositive() {
        let a = SymMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            perron(&a, &tol()),
            Err(LinalgError::NotPositiveMatrix { row: 0, col: 1, .. })
        ));
    }

    fn positive_matrix(m: usize, entries: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(m, |i, j| entries[i * 10 + j] + entries[j * 10 + i])
    }

    proptest! {
        #[test]
        fn agrees_with_jacobi(
            m in 1usize..10,
            entries in proptest::collection::vec(0.01f64..5.0, 100),
        ) {
            let a = positive_matrix(m, &entries);
            let p = perron(&a, &tol()).unwrap();
            let e = jacobi_eigen(&a, &tol()).unwrap();
            let top = *e.values.last().unwrap();
            prop_assert!((p.value - top).abs() <= 1e-10 * top.max(1.0));
            prop_assert!(p.vector.iter().all(|&v| v > 0.0));
        }

        #[test]
        fn downdate_radius_decreases(
            m in 1usize..8,
            entries in proptest::collection::vec(1.0f64..3.0, 100),
            w in proptest::collection::vec(0.1f64..1.0, 10),
            g1 in 0.0f64..0.5,
            step in 0.01f64..0.5,
        ) {
            // Keep A − γwwᵀ entrywise positive: entries ≥ 2 > γ · max w².
            let a = positive_matrix(m, &entries);
            let w = &w[..m];
            let g2 = g1 + step;
            let r1 = perron(&rank_one_downdate(&a, g1, w).unwrap(), &tol()).unwrap().value;
            let r2 = perron(&rank_one_downdate(&a, g2, w).unwrap(), &tol()).unwrap().value;
            prop_assert!(r2 < r1);
        }
    }
}

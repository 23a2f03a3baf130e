use super::{LinalgError, SymMatrix};
use crate::config::JACOBI_MAX_SWEEPS;
use crate::Tolerances;

/// Full symmetric eigendecomposition `A = V Λ Vᵀ`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    order: usize,
    /// Row-major `order × order`; column `c` pairs with `values[c]`.
    vectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vector(&self, c: usize) -> Vec<f64> {
        (0..self.order)
            .map(|r| self.vectors[r * self.order + c])
            .collect()
    }

    #[inline]
    pub fn vector_entry(&self, row: usize, col: usize) -> f64 {
        self.vectors[row * self.order + col]
    }

    /// `max |(V Λ Vᵀ − A)_{ij}|`.
    pub fn reconstruction_error(&self, a: &SymMatrix) -> f64 {
        let m = self.order;
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                let r: f64 = (0..m)
                    .map(|c| self.vector_entry(i, c) * self.values[c] * self.vector_entry(j, c))
                    .sum();
                worst = worst.max((r - a.get(i, j)).abs());
            }
        }
        worst
    }

    /// `max |(VᵀV − I)_{ij}|`.
    pub fn orthogonality_error(&self) -> f64 {
        let m = self.order;
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                let dot: f64 = (0..m)
                    .map(|r| self.vector_entry(r, a) * self.vector_entry(r, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over all `(p, q)` pairs, annihilating each off-diagonal entry with
/// a plane rotation, until the off-diagonal Frobenius norm is at most
/// `tol.eig · ‖A‖_F`. Equal eigenvalues keep their original diagonal order.
pub fn jacobi_eigen(a: &SymMatrix, tol: &Tolerances) -> Result<EigenDecomposition, LinalgError> {
    let m = a.order();
    if m == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let mut w: Vec<f64> = a.rows().flatten().copied().collect();
    let mut v = vec![0.0; m * m];
    for i in 0..m {
        v[i * m + i] = 1.0;
    }
    let threshold = tol.eig * a.frobenius();

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        let off: f64 = (0..m)
            .flat_map(|p| (p + 1..m).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * w[p * m + q] * w[p * m + q])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = w[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * m + p];
                let aqq = w[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                w[p * m + p] = app - t * apq;
                w[q * m + q] = aqq + t * apq;
                w[p * m + q] = 0.0;
                w[q * m + p] = 0.0;
                for r in 0..m {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = w[r * m + p];
                    let arq = w[r * m + q];
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    w[r * m + p] = np;
                    w[p * m + r] = np;
                    w[r * m + q] = nq;
                    w[q * m + r] = nq;
                }
                for r in 0..m {
                    let vrp = v[r * m + p];
                    let vrq = v[r * m + q];
                    v[r * m + p] = c * vrp - s * vrq;
                    v[r * m + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            method: "jacobi",
            limit: JACOBI_MAX_SWEEPS,
            unit: "sweeps",
        });
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| w[x * m + x].total_cmp(&w[y * m + y]));
    let values = order.iter().map(|&c| w[c * m + c]).collect();
    let mut vectors = vec![0.0; m * m];
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..m {
            vectors[r * m + new_c] = v[r * m + old_c];
        }
    }
    Ok(EigenDecomposition {
        values,
        order: m,
        vectors,
    })
}

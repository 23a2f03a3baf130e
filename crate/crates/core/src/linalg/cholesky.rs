use super::{LinalgError, SymMatrix};
use crate::Tolerances;

/// Inverse of a symmetric positive definite matrix via `A = LLᵀ`,
/// `A⁻¹ = L⁻ᵀL⁻¹`.
///
/// The result is checked against `‖A·A⁻¹ − I‖_max ≤ tol.inverse_residual`.
pub fn spd_inverse(a: &SymMatrix, tol: &Tolerances) -> Result<SymMatrix, LinalgError> {
    let m = a.order();
    if m == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let mut l = vec![0.0; m * m];
    for j in 0..m {
        let mut pivot = a.get(j, j);
        for k in 0..j {
            pivot -= l[j * m + k] * l[j * m + k];
        }
        if pivot <= tol.pivot_floor {
            return Err(LinalgError::NotPositiveDefinite { row: j, pivot });
        }
        let d = pivot.sqrt();
        l[j * m + j] = d;
        for i in j + 1..m {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            l[i * m + j] = s / d;
        }
    }

    // Forward substitution column by column: L · Y = I, Y = L⁻¹ lower triangular.
    let mut y = vec![0.0; m * m];
    for c in 0..m {
        y[c * m + c] = 1.0 / l[c * m + c];
        for i in c + 1..m {
            let s: f64 = (c..i).map(|k| l[i * m + k] * y[k * m + c]).sum();
            y[i * m + c] = -s / l[i * m + i];
        }
    }

    let inv = SymMatrix::from_fn(m, |i, j| (i.max(j)..m).map(|k| y[k * m + i] * y[k * m + j]).sum());

    let residual = a
        .matmul(&inv)
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (v - if i == j { 1.0 } else { 0.0 }).abs())
        })
        .fold(0.0, f64::max);
    if residual > tol.inverse_residual {
        return Err(LinalgError::IllConditioned {
            residual,
            limit: tol.inverse_residual,
        });
    }
    Ok(inv)
}

use super::classify::{Characteristic, Classification};
use super::{classify, normalized_laplacian, perron_branches_at, SpectralError};
use crate::config::BISECTION_MAX_ITERATIONS;
use crate::graph::{Tree, Vertex};
use crate::linalg::{jacobi_eigen, perron, rank_one_downdate, Perron};
use crate::Tolerances;

/// `λ₁` with a certifying eigenvector.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub lambda1: f64,
    /// Interpolation parameter `γ*`, Type 2 only.
    pub gamma: Option<f64>,
    pub type2: Option<Type2Detail>,
    /// Unit eigenvector of `𝓛` for `λ₁`, largest-magnitude entry positive.
    pub g: Vec<f64>,
    /// `D^{-1/2} g`.
    pub f: Vec<f64>,
    /// `‖𝓛g − λ₁g‖_∞`.
    pub residual_inf: f64,
    /// `|𝟏ᵀD^{1/2}g|`.
    pub orth_residual: f64,
    /// Second smallest eigenvalue from the dense Jacobi solver.
    pub oracle_lambda1: f64,
    pub classification: Classification,
}

/// Fixed point of the Type 2 bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Type2Detail {
    pub gamma: f64,
    /// `ρ(M₁ − γ*S₁)`, the side holding the lower-numbered endpoint.
    pub rho_first: f64,
    /// `ρ(M₂ − (1 − γ*)S₂)`.
    pub rho_second: f64,
    pub iterations: usize,
}

/// `f = D^{-1/2} g`.
pub fn harmonic_eigenfunction(t: &Tree, g: &[f64]) -> Vec<f64> {
    assert_eq!(g.len(), t.n(), "vector length must match the vertex count");
    g.iter()
        .enumerate()
        .map(|(v, x)| x / (t.degree(v) as f64).sqrt())
        .collect()
}

/// Second smallest eigenvalue of `𝓛` from the dense solver.
pub fn oracle_lambda1(t: &Tree, tol: &Tolerances) -> Result<f64, SpectralError> {
    Ok(jacobi_eigen(&normalized_laplacian(t), tol)?.values[1])
}

/// Classifies `t` and computes `λ₁` by the matching characterization.
pub fn lambda1(t: &Tree, tol: &Tolerances) -> Result<SpectralReport, SpectralError> {
    let classification = classify(t, tol)?;
    let mut report = match classification.characteristic {
        Characteristic::Vertex(v) => lambda1_type1(t, v, tol)?,
        Characteristic::Edge(i, j) => lambda1_type2(t, i, j, tol)?,
    };
    report.classification = classification;
    Ok(report)
}

/// Type 1: `λ₁ = 1/ρ` for the Perron branches at `v`.
///
/// The eigenvector is the Perron vector `y` of one Perron branch and `−z` on
/// a second one, scaled so `𝟏ᵀD^{1/2}y = 𝟏ᵀD^{1/2}z`, and zero elsewhere.
pub fn lambda1_type1(t: &Tree, v: Vertex, tol: &Tolerances) -> Result<SpectralReport, SpectralError> {
    let at = perron_branches_at(t, v, tol)?;
    let &[first, second, ..] = at.perron_set.as_slice() else {
        return Err(SpectralError::NotType1 {
            vertex: v,
            perron_branches: at.perron_set.len(),
        });
    };
    let rho = at.max_radius();
    let weight = |b: usize| weighted_sum(&at.bottlenecks[b].sqrt_degrees(), &at.perron[b].vector);
    let scale = weight(first) / weight(second);

    let mut g = vec![0.0; t.n()];
    scatter(
        &mut g,
        &at.bottlenecks[first].branch,
        &at.perron[first].vector,
        1.0,
    );
    scatter(
        &mut g,
        &at.bottlenecks[second].branch,
        &at.perron[second].vector,
        -scale,
    );

    let classification = Classification::new(Characteristic::Vertex(v), vec![at.site()], vec![v]);
    finish(t, 1.0 / rho, None, g, classification, tol)
}

/// Type 2 on the edge `{i, j}`.
///
/// With `M₁` the bottleneck of the branch at `j` containing `i`, `M₂` the
/// bottleneck of the branch at `i` containing `j` and `Sₖ = D^{1/2}𝟏𝟏ᵀD^{1/2}`
/// on the respective branch,
/// `h(γ) = ρ(M₁ − γS₁) − ρ(M₂ − (1 − γ)S₂)` is strictly decreasing on
/// `[0, 1]`. Its root `γ*` gives `λ₁ = 1/ρ(M₁ − γ*S₁)`.
///
/// At the endpoints the shifted matrices are no longer strictly positive,
/// but `M₁ − S₁` is the direct sum of the bottleneck matrices of the other
/// branches at `i` (plus a zero row for `i`), so `h(0)` and `h(1)` are read
/// off the branch radii.
pub fn lambda1_type2(
    t: &Tree,
    i: Vertex,
    j: Vertex,
    tol: &Tolerances,
) -> Result<SpectralReport, SpectralError> {
    t.check_vertex(i)?;
    t.check_vertex(j)?;
    if !t.is_adjacent(i, j) {
        return Err(SpectralError::NotAdjacent(i, j));
    }
    let (i, j) = (i.min(j), i.max(j));
    let at_i = perron_branches_at(t, i, tol)?;
    let at_j = perron_branches_at(t, j, tol)?;
    let toward_j = at_i.branches.component[j].expect("j is not the root at i");
    let toward_i = at_j.branches.component[i].expect("i is not the root at j");

    let m1 = &at_j.bottlenecks[toward_i];
    let m2 = &at_i.bottlenecks[toward_j];
    let s1 = m1.sqrt_degrees();
    let s2 = m2.sqrt_degrees();
    debug_assert!(m1.anchor_row_defect() <= 1e-9 * m1.matrix.max_abs());
    debug_assert!(m2.anchor_row_defect() <= 1e-9 * m2.matrix.max_abs());
    debug_assert!(m1.floor_margin() >= -1e-12 && m2.floor_margin() >= -1e-12);

    let other_max = |pb: &super::PerronBranches, skip: usize| {
        pb.perron
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != skip)
            .map(|(_, p)| p.value)
            .fold(0.0, f64::max)
    };
    let h0 = at_j.perron[toward_i].value - other_max(&at_j, toward_i);
    let h1 = other_max(&at_i, toward_j) - at_i.perron[toward_j].value;
    if !(h0 > 0.0 && h1 < 0.0) {
        return Err(SpectralError::NotType2 { i, j, h0, h1 });
    }

    let shifted = |gamma: f64| -> Result<(Perron, Perron), SpectralError> {
        let a = perron(&rank_one_downdate(&m1.matrix, gamma, &s1)?, tol)?;
        let b = perron(&rank_one_downdate(&m2.matrix, 1.0 - gamma, &s2)?, tol)?;
        Ok((a, b))
    };

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut solution = None;
    for iteration in 1..=BISECTION_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let (p1, p2) = shifted(mid)?;
        let h = p1.value - p2.value;
        if h.abs() <= tol.bisect_h || 0.5 * (hi - lo) <= tol.bisect_width {
            solution = Some((mid, p1, p2, iteration));
            break;
        }
        if h > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let Some((gamma, p1, p2, iterations)) = solution else {
        return Err(SpectralError::NoRoot(BISECTION_MAX_ITERATIONS));
    };

    let scale = weighted_sum(&s1, &p1.vector) / weighted_sum(&s2, &p2.vector);
    let mut g = vec![0.0; t.n()];
    scatter(&mut g, &m1.branch, &p1.vector, -1.0);
    scatter(&mut g, &m2.branch, &p2.vector, scale);

    let detail = Type2Detail {
        gamma,
        rho_first: p1.value,
        rho_second: p2.value,
        iterations,
    };
    let classification = Classification::new(
        Characteristic::Edge(i, j),
        vec![at_i.site(), at_j.site()],
        vec![i, j],
    );
    let mut report = finish(t, 1.0 / p1.value, Some(gamma), g, classification, tol)?;
    report.type2 = Some(detail);
    Ok(report)
}

fn weighted_sum(weights: &[f64], x: &[f64]) -> f64 {
    weights.iter().zip(x).map(|(w, v)| w * v).sum()
}

fn scatter(g: &mut [f64], vertices: &[Vertex], values: &[f64], scale: f64) {
    for (&v, &x) in vertices.iter().zip(values) {
        g[v] = scale * x;
    }
}

/// Normalizes `g`, fixes its sign, and fills residuals and the oracle value.
fn finish(
    t: &Tree,
    lambda1: f64,
    gamma: Option<f64>,
    mut g: Vec<f64>,
    classification: Classification,
    tol: &Tolerances,
) -> Result<SpectralReport, SpectralError> {
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut lead = 0;
    for v in 1..g.len() {
        if g[v].abs() > g[lead].abs() {
            lead = v;
        }
    }
    let sign = if g[lead] < 0.0 { -1.0 } else { 1.0 };
    for x in &mut g {
        *x *= sign / norm;
    }

    let lap = normalized_laplacian(t);
    let lg = lap.mul_vec(&g);
    let residual_inf = lg
        .iter()
        .zip(&g)
        .fold(0.0f64, |m, (a, b)| m.max((a - lambda1 * b).abs()));
    let orth_residual = g
        .iter()
        .enumerate()
        .map(|(v, x)| (t.degree(v) as f64).sqrt() * x)
        .sum::<f64>()
        .abs();
    let oracle = jacobi_eigen(&lap, tol)?.values[1];
    let f = harmonic_eigenfunction(t, &g);
    Ok(SpectralReport {
        lambda1,
        gamma,
        type2: None,
        g,
        f,
        residual_inf,
        orth_residual,
        oracle_lambda1: oracle,
        classification,
    })
}

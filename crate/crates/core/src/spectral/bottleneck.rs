use super::{combinatorial_laplacian, normalized_laplacian, SpectralError};
use crate::graph::{Branch, RootedTree, Tree, Vertex};
use crate::linalg::{spd_inverse, SymMatrix};
use crate::Tolerances;

/// The block of `𝓛_k^{-1}` on one branch at `k`.
///
/// Rows and columns follow [`branch`](Self::branch) (increasing vertex id).
/// Degrees are taken in the whole tree, not in the branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckMatrix {
    pub root: Vertex,
    pub anchor: Vertex,
    pub branch: Vec<Vertex>,
    pub matrix: SymMatrix,
    pub degrees: Vec<usize>,
}

impl BottleneckMatrix {
    pub fn order(&self) -> usize {
        self.branch.len()
    }

    /// `D^{1/2}𝟏` on the branch.
    pub fn sqrt_degrees(&self) -> Vec<f64> {
        self.degrees.iter().map(|&d| (d as f64).sqrt()).collect()
    }

    pub fn anchor_position(&self) -> usize {
        self.branch
            .binary_search(&self.anchor)
            .expect("anchor belongs to its branch")
    }

    /// `max |M e_a − √d_a D^{1/2}𝟏|` for the anchor `a`. Zero up to rounding,
    /// since every path from the branch to the root runs through the anchor
    /// edge and nothing else from the anchor's path.
    pub fn anchor_row_defect(&self) -> f64 {
        let a = self.anchor_position();
        let s = self.sqrt_degrees();
        let sa = s[a];
        self.matrix
            .row(a)
            .iter()
            .zip(&s)
            .fold(0.0, |m, (v, sx)| m.max((v - sa * sx).abs()))
    }

    /// `min (M − D^{1/2}𝟏𝟏ᵀD^{1/2})_{xy}`; nonnegative whenever every shared
    /// path has at least one edge, which holds within a branch.
    pub fn floor_margin(&self) -> f64 {
        let s = self.sqrt_degrees();
        let m = self.order();
        let mut worst = f64::INFINITY;
        for x in 0..m {
            for y in 0..m {
                worst = worst.min(self.matrix.get(x, y) - s[x] * s[y]);
            }
        }
        worst
    }
}

fn validate_branch(t: &Tree, k: Vertex, branch: &Branch) -> Result<(), SpectralError> {
    t.check_vertex(k)?;
    if branch.is_empty() || !t.is_adjacent(k, branch.anchor) || !branch.contains(branch.anchor) {
        return Err(SpectralError::InvalidBranch(format!(
            "anchor {} is not a neighbor of {k} inside the branch",
            branch.anchor
        )));
    }
    if branch.vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpectralError::InvalidBranch(
            "vertices must be strictly increasing".into(),
        ));
    }
    if let Some(&v) = branch.vertices.iter().find(|&&v| v >= t.n() || v == k) {
        return Err(SpectralError::InvalidBranch(format!(
            "vertex {v} cannot belong to a branch at {k}"
        )));
    }
    Ok(())
}

/// Bottleneck matrix from the closed form `√(d_i d_j)·|P_{i,j,k}|`, with no
/// matrix inversion.
pub fn bottleneck_formula(t: &Tree, k: Vertex, branch: &Branch) -> Result<BottleneckMatrix, SpectralError> {
    validate_branch(t, k, branch)?;
    Ok(bottleneck_formula_rooted(t, &RootedTree::new(t, k), branch))
}

/// As [`bottleneck_formula`], reusing a tree already rooted at the branch
/// root. The branch is not validated.
pub fn bottleneck_formula_rooted(t: &Tree, rooted: &RootedTree, branch: &Branch) -> BottleneckMatrix {
    let degrees: Vec<usize> = branch.vertices.iter().map(|&v| t.degree(v)).collect();
    let sqrt_d: Vec<f64> = degrees.iter().map(|&d| (d as f64).sqrt()).collect();
    let vs = &branch.vertices;
    let matrix = SymMatrix::from_fn(vs.len(), |a, b| {
        sqrt_d[a] * sqrt_d[b] * rooted.shared_edges(vs[a], vs[b]) as f64
    });
    BottleneckMatrix {
        root: rooted.root(),
        anchor: branch.anchor,
        branch: vs.clone(),
        matrix,
        degrees,
    }
}

/// Bottleneck matrix by inverting the branch block of `𝓛_k`.
pub fn bottleneck_oracle(
    t: &Tree,
    k: Vertex,
    branch: &Branch,
    tol: &Tolerances,
) -> Result<BottleneckMatrix, SpectralError> {
    validate_branch(t, k, branch)?;
    let block = normalized_laplacian(t).principal_submatrix(&branch.vertices);
    let matrix = spd_inverse(&block, tol)?;
    Ok(BottleneckMatrix {
        root: k,
        anchor: branch.anchor,
        branch: branch.vertices.clone(),
        matrix,
        degrees: branch.vertices.iter().map(|&v| t.degree(v)).collect(),
    })
}

/// Inverse of the branch block of `L_k`; entry `(i, j)` should equal
/// `|P_{i,j,k}|`.
pub fn laplacian_bottleneck_oracle(
    t: &Tree,
    k: Vertex,
    branch: &Branch,
    tol: &Tolerances,
) -> Result<SymMatrix, SpectralError> {
    validate_branch(t, k, branch)?;
    let block = combinatorial_laplacian(t).principal_submatrix(&branch.vertices);
    Ok(spd_inverse(&block, tol)?)
}

//! Second smallest eigenvalue of the normalized Laplacian of a tree.
//!
//! The normalized Laplacian `𝓛 = D^{-1/2} L D^{-1/2}` of a tree has spectrum
//! `0 = λ₀ < λ₁ ≤ … ≤ λ_{n-1} ≤ 2`. This crate computes `λ₁` without a full
//! eigensolve, by way of *normalized bottleneck matrices*: for a vertex `k`
//! and a branch `C` of `T∖k` (a connected component after deleting `k`), the
//! block of `𝓛_k^{-1}` on `C` has entries `√(d_i d_j)·|P_{i,j,k}|`, where
//! `P_{i,j,k}` is the set of edges shared by the paths `i → k` and `j → k`.
//!
//! Every tree falls into one of two kinds:
//!
//! * **Type 1**: some vertex `v` has at least two branches whose bottleneck
//!   matrices attain the largest spectral radius `ρ` (Perron branches). Then
//!   `λ₁ = 1/ρ` and an eigenvector vanishes at `v`.
//! * **Type 2**: every vertex has a unique Perron branch. The walk along
//!   Perron branches ends on an edge `(i, j)`, and `λ₁ = 1/ρ` where `ρ` is the
//!   common spectral radius of two rank-one downdated bottleneck matrices,
//!   found by bisection on the interpolation parameter `γ ∈ (0, 1)`.
//!
//! Every result is cross-checked against a dense Jacobi eigensolver, and the
//! sign/monotonicity structure of the constructed eigenvector is verified by
//! the checkers in [`verify`].
//!
//! ```
//! use perron_tree::{graph::Tree, spectral, Tolerances};
//!
//! let p4 = Tree::path(4).unwrap();
//! let report = spectral::lambda1(&p4, &Tolerances::default()).unwrap();
//! assert!((report.lambda1 - 0.5).abs() < 1e-12);
//! assert!((report.gamma.unwrap() - 0.5).abs() < 1e-10);
//! ```

pub mod cli;
mod config;
pub mod graph;
pub mod linalg;
pub mod spectral;
pub mod verify;

pub use config::Tolerances;
pub use graph::{parse_edge_list, random_tree, GraphError, Tree, Vertex};
pub use linalg::{LinalgError, SymMatrix};
pub use spectral::{
    classify, lambda1, Characteristic, Classification, SpectralError, SpectralReport, TreeKind,
};

pub use verify::{ensemble_crosscheck, EnsembleSummary, TheoremVerdict};

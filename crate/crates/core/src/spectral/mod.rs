//! Normalized Laplacians of trees, normalized bottleneck matrices, Perron
//! branches, Type 1 / Type 2 classification and the computation of `λ₁`
//! together with an explicit eigenvector.
//!
//! "Perron branch" and "Perron component" mean the same thing here: a branch
//! at a vertex whose bottleneck matrix has the largest spectral radius among
//! the branches at that vertex.

mod bottleneck;
mod classify;
mod lambda;
mod laplacian;

pub use bottleneck::{
    bottleneck_formula, bottleneck_formula_rooted, bottleneck_oracle, laplacian_bottleneck_oracle,
    BottleneckMatrix,
};
pub use classify::{
    classify, classify_exhaustive, classify_from_scan, perron_branches_at, scan_all_vertices, Characteristic,
    Classification, PerronBranches, SiteRadii, TreeKind,
};
pub use lambda::{
    harmonic_eigenfunction, lambda1, lambda1_type1, lambda1_type2, oracle_lambda1, SpectralReport,
    Type2Detail,
};
pub use laplacian::{combinatorial_laplacian, normalized_laplacian, sandwich_laplacian};

use crate::graph::{GraphError, Vertex};
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("InvalidBranch: {0}")]
    InvalidBranch(String),
    #[error("NotType1: vertex {vertex} has {perron_branches} Perron branch(es)")]
    NotType1 { vertex: Vertex, perron_branches: usize },
    #[error("NotType2: bracket condition fails on edge {i}-{j} (h(0) = {h0:e}, h(1) = {h1:e})")]
    NotType2 { i: Vertex, j: Vertex, h0: f64, h1: f64 },
    #[error("NotAdjacent: {0} and {1} do not share an edge")]
    NotAdjacent(Vertex, Vertex),
    #[error("NoRoot: bisection did not converge within {0} iterations")]
    NoRoot(usize),
    #[error("TieAmbiguity: vertices {0:?} each have at least two Perron branches")]
    TieAmbiguity(Vec<Vertex>),
    #[error("NoCharacteristicEdge: expected one mutually Perron edge, found {0}")]
    NoCharacteristicEdge(usize),
    #[error("WalkDidNotTerminate: no characteristic site after {0} steps")]
    WalkDidNotTerminate(usize),
}

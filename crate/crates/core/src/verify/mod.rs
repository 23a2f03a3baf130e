//! Executable checks of the sign and monotonicity structure of `λ₁`
//! eigenvectors on trees, and the randomized cross-check harness.
//!
//! All checkers take the eigenvector built by the characterization
//! ([`SpectralReport::g`](crate::SpectralReport) or its harmonic form `f`),
//! never a raw eigensolver column: when `λ₁` is a multiple eigenvalue an
//! arbitrary basis vector of the eigenspace need not have the structure the
//! theorems describe. Failures come back as a failing [`TheoremVerdict`]
//! rather than an error.

mod ensemble;
mod monotonicity;
mod valuation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Tree, Vertex};

pub use ensemble::{
    check_tree, ensemble_crosscheck, trial_parameters, walk_matches_scan, EnsembleError, EnsembleSummary,
    TrialFailure, TrialOutcome, VerdictCounts,
};
pub use monotonicity::{check_block_signs, check_monotonicity};
pub use valuation::{check_valuation, check_valuation_g};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Per-vertex signs of a vector, with values inside
/// `band = sign_band · ‖x‖_∞` read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPattern {
    pub signs: Vec<Sign>,
    pub band: f64,
}

impl SignPattern {
    pub fn of(x: &[f64], sign_band: f64) -> Self {
        let band = sign_band * x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let signs = x
            .iter()
            .map(|&v| {
                if v > band {
                    Sign::Positive
                } else if v < -band {
                    Sign::Negative
                } else {
                    Sign::Zero
                }
            })
            .collect();
        Self { signs, band }
    }

    pub fn get(&self, v: Vertex) -> Sign {
        self.signs[v]
    }

    /// Vertices whose value is zero but that have a nonzero neighbor.
    pub fn zero_frontier(&self, t: &Tree) -> Vec<Vertex> {
        (0..t.n())
            .filter(|&v| {
                self.signs[v] == Sign::Zero && t.neighbors(v).iter().any(|&u| self.signs[u] != Sign::Zero)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    /// Valuation of the harmonic eigenfunction `f` at cut vertices.
    HarmonicValuation,
    /// Valuation of the eigenfunction `g` at cut vertices (no inequality).
    EigenValuation,
    /// Monotonicity of `f` along pure paths.
    Monotonicity,
    /// Sign classes of blocks under `g`.
    BlockSigns,
}

/// Where a diagnostic applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Site {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
    /// Branch at `root` entered through `anchor`.
    Branch {
        root: Vertex,
        anchor: Vertex,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockSign {
    Positive,
    Negative,
    Zero,
}

/// Which clause of a theorem matched at a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    /// Cut vertex with positive value: one component reaches negative values.
    PositiveCutVertex,
    /// Same clause applied to the negated vector.
    NegativeCutVertex,
    /// Zero cut vertex with exactly one mixed component; the rest vanish.
    ZeroWithMixedComponent,
    /// Zero cut vertex whose components are each single-signed or zero.
    ZeroPureComponents,
    /// The unique zero articulation point with a nonzero neighbor.
    ZeroArticulation,
    /// The unique mixed block.
    MixedBlock,
    /// Articulation values increase away from the start of the path.
    Increasing,
    /// Articulation values decrease away from the start of the path.
    Decreasing,
    /// Articulation values vanish along the path.
    ZeroSequence,
    /// A block with a single sign class (ignoring the zero articulation point).
    PureBlock(BlockSign),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub site: Site,
    pub clause: Clause,
}

/// Which of the two structural cases a vector falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureCase {
    /// No mixed block; `zero_vertex` is the unique zero articulation point
    /// with a nonzero neighbor.
    NoMixedBlock { zero_vertex: Vertex },
    /// Exactly one mixed block, the edge `(a, b)` with `a < b`.
    UniqueMixedBlock { a: Vertex, b: Vertex },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub pass: bool,
    pub diagnostics: Vec<Diagnostic>,
    pub case: Option<StructureCase>,
    /// First violation found, when failing.
    pub counterexample: Option<String>,
}

impl TheoremVerdict {
    pub(crate) fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            pass: true,
            diagnostics: Vec::new(),
            case: None,
            counterexample: None,
        }
    }

    pub(crate) fn note(&mut self, site: Site, clause: Clause) {
        self.diagnostics.push(Diagnostic { site, clause });
    }

    pub(crate) fn fail(mut self, message: impl Into<String>) -> Self {
        self.pass = false;
        self.counterexample = Some(message.into());
        self
    }
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: {}",
            self.theorem,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " ({c})")?;
        }
        Ok(())
    }
}

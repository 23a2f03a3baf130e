use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::spectral::TreeKind;
use crate::verify::{EnsembleSummary, StructureCase};

pub const SCHEMA_VERSION: &str = "1";

/// Where the analyzed tree came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputDescriptor {
    File { path: String },
    Generated { n: usize, seed: u64 },
}

impl std::fmt::Display for InputDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputDescriptor::File { path } => write!(f, "{path}"),
            InputDescriptor::Generated { n, seed } => write!(f, "random tree n={n} seed={seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub kind: TreeKind,
    /// One label for Type 1, two (ascending) for Type 2.
    pub characteristic: Vec<u64>,
    pub walk_trace: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `‖𝓛g − λ₁g‖_∞`.
    pub eigen_inf: f64,
    /// `eigen_inf / max(1, ‖g‖_∞)`.
    pub eigen_relative: f64,
    /// `|𝟏ᵀD^{1/2}g|`.
    pub orthogonality: f64,
    /// `|λ₁ − oracle λ₁|`.
    pub oracle_deviation: f64,
}

/// Branch radii at one characteristic vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SitePerronDoc {
    pub vertex: u64,
    pub anchors: Vec<u64>,
    pub radii: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CaseDoc {
    NoMixedBlock { zero_vertex: u64 },
    UniqueMixedBlock { a: u64, b: u64 },
}

impl CaseDoc {
    pub(crate) fn from_case(c: StructureCase, label: &impl Fn(usize) -> u64) -> Self {
        match c {
            StructureCase::NoMixedBlock { zero_vertex } => CaseDoc::NoMixedBlock {
                zero_vertex: label(zero_vertex),
            },
            StructureCase::UniqueMixedBlock { a, b } => {
                let (a, b) = (label(a), label(b));
                CaseDoc::UniqueMixedBlock {
                    a: a.min(b),
                    b: a.max(b),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    pub structure: Option<CaseDoc>,
}

/// Output of `analyze`. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputDescriptor,
    pub n: usize,
    pub classification: ClassificationDoc,
    pub lambda1: f64,
    pub gamma: Option<f64>,
    pub oracle_lambda1: f64,
    pub residuals: Residuals,
    pub perron_values: Vec<SitePerronDoc>,
    pub g: BTreeMap<u64, f64>,
    pub f: BTreeMap<u64, f64>,
    pub checks: Vec<CheckDoc>,
    /// Only filled with `--timing`; `null` keeps reports reproducible.
    pub timing_ms: Option<f64>,
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.classification;
        match c.kind {
            TreeKind::Type1 => writeln!(
                s,
                "Type 1, characteristic vertex {}, lambda1 = {:?}",
                c.characteristic[0], self.lambda1
            ),
            TreeKind::Type2 => writeln!(
                s,
                "Type 2, characteristic edge {}-{}, lambda1 = {:?}",
                c.characteristic[0], c.characteristic[1], self.lambda1
            ),
        }
        .unwrap();
        if let Some(g) = self.gamma {
            writeln!(s, "gamma = {g:?}").unwrap();
        }
        writeln!(s, "input: {}", self.input).unwrap();
        writeln!(s, "vertices: {}", self.n).unwrap();
        let trace: Vec<String> = c.walk_trace.iter().map(u64::to_string).collect();
        writeln!(s, "walk: {}", trace.join(" -> ")).unwrap();
        writeln!(s, "oracle lambda1 = {:?}", self.oracle_lambda1).unwrap();
        let r = &self.residuals;
        writeln!(
            s,
            "residuals: eigen {:?} (relative {:?}), orthogonality {:?}, oracle deviation {:?}",
            r.eigen_inf, r.eigen_relative, r.orthogonality, r.oracle_deviation
        )
        .unwrap();
        for site in &self.perron_values {
            let parts: Vec<String> = site
                .anchors
                .iter()
                .zip(&site.radii)
                .map(|(a, rho)| format!("via {a}: {rho:?}"))
                .collect();
            writeln!(s, "branch radii at {}: {}", site.vertex, parts.join(", ")).unwrap();
        }
        writeln!(s, "vertex g f").unwrap();
        for (v, g) in &self.g {
            writeln!(s, "{v} {g:?} {:?}", self.f[v]).unwrap();
        }
        writeln!(s, "checks:").unwrap();
        for check in &self.checks {
            let status = if check.pass { "pass" } else { "FAIL" };
            match check.structure {
                Some(CaseDoc::NoMixedBlock { zero_vertex }) => {
                    writeln!(
                        s,
                        "  {} {status} (no mixed block, zero at {zero_vertex})",
                        check.name
                    )
                }
                Some(CaseDoc::UniqueMixedBlock { a, b }) => {
                    writeln!(s, "  {} {status} (mixed block {a}-{b})", check.name)
                }
                None => writeln!(s, "  {} {status}", check.name),
            }
            .unwrap();
        }
        if let Some(ms) = self.timing_ms {
            writeln!(s, "time: {ms:?} ms").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BottleneckBranch {
    pub anchor: u64,
    pub vertices: Vec<u64>,
    /// Rows in the order of `vertices`.
    pub matrix: Vec<Vec<f64>>,
    pub rho: f64,
    /// Whether this branch attains the largest radius at the vertex.
    pub perron: bool,
    /// Max entrywise distance to the inverse of the branch block of `𝓛`.
    pub max_deviation: f64,
}

/// Output of `bottleneck`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BottleneckDocument {
    pub schema_version: String,
    pub input: InputDescriptor,
    pub vertex: u64,
    pub branches: Vec<BottleneckBranch>,
}

impl BottleneckDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "input: {}", self.input).unwrap();
        writeln!(s, "vertex {}: {} branch(es)", self.vertex, self.branches.len()).unwrap();
        for b in &self.branches {
            let vs: Vec<String> = b.vertices.iter().map(u64::to_string).collect();
            let mark = if b.perron { ", Perron" } else { "" };
            writeln!(s, "branch via {} {{{}}}{mark}", b.anchor, vs.join(", ")).unwrap();
            for row in &b.matrix {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
                writeln!(s, "  [{}]", cells.join(", ")).unwrap();
            }
            writeln!(s, "  rho = {:?}", b.rho).unwrap();
            writeln!(s, "  max deviation from inverse = {:?}", b.max_deviation).unwrap();
        }
        s
    }
}

/// Output of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub summary: EnsembleSummary,
}

impl VerifyDocument {
    pub fn to_text(&self) -> String {
        let m = &self.summary;
        let mut s = String::new();
        writeln!(
            s,
            "{}/{} pass (n in {}..={}, seed {})",
            m.passed, m.trials, m.n_min, m.n_max, m.seed
        )
        .unwrap();
        writeln!(s, "Type 1: {}, Type 2: {}", m.type1, m.type2).unwrap();
        writeln!(s, "max lambda1 deviation: {:?}", m.max_lambda1_deviation).unwrap();
        writeln!(s, "max bottleneck deviation: {:?}", m.max_bottleneck_deviation).unwrap();
        writeln!(
            s,
            "max Laplacian bottleneck deviation: {:?}",
            m.max_laplacian_bottleneck_deviation
        )
        .unwrap();
        writeln!(s, "max relative eigen residual: {:?}", m.max_relative_residual).unwrap();
        writeln!(s, "max orthogonality residual: {:?}", m.max_orth_residual).unwrap();
        writeln!(s, "max fixed point gap: {:?}", m.max_fixed_point_gap).unwrap();
        writeln!(
            s,
            "walk agrees with scan: {}/{}",
            m.classification_agreement, m.trials
        )
        .unwrap();
        let c = &m.verdict_passes;
        for (name, k) in [
            ("HarmonicValuation", c.valuation),
            ("EigenValuation", c.valuation_g),
            ("Monotonicity", c.monotonicity),
            ("BlockSigns", c.block_signs),
            ("CaseMatchesClassification", c.case_matches),
            ("PerronBranchesPointToSite", c.perron_direction),
            ("SignConsistency", c.sign_consistency),
        ] {
            writeln!(s, "{name}: {k}/{}", m.trials).unwrap();
        }
        for f in &m.failures {
            writeln!(
                s,
                "failed trial {} (n={}, tree seed {}; vertex ids are 0-based):",
                f.trial, f.n, f.seed
            )
            .unwrap();
            for reason in &f.reasons {
                writeln!(s, "  {reason}").unwrap();
            }
        }
        s
    }
}

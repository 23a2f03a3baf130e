use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_block_signs, check_monotonicity, check_valuation, check_valuation_g, SignPattern, StructureCase,
    TheoremVerdict,
};
use crate::graph::{random_tree, shared_path_count, Tree};
use crate::linalg::jacobi_eigen;
use crate::spectral::{
    bottleneck_oracle, classify_exhaustive, classify_from_scan, lambda1, laplacian_bottleneck_oracle,
    normalized_laplacian, scan_all_vertices, Characteristic, SpectralReport, TreeKind,
};
use crate::Tolerances;

/// Acceptance thresholds for one trial.
const LAMBDA_DEVIATION: f64 = 1e-8;
const BOTTLENECK_DEVIATION: f64 = 1e-9;
const EIGEN_RESIDUAL: f64 = 1e-8;
const FIXED_POINT_GAP: f64 = 1e-10;
const SPECTRUM_SLACK: f64 = 1e-10;
const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnsembleError {
    #[error("invalid size range: need 2 <= n_min <= n_max, got {n_min}..={n_max}")]
    InvalidRange { n_min: usize, n_max: usize },
    #[error("trials must be at least 1")]
    NoTrials,
}

/// Everything measured on a single tree.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub n: usize,
    pub kind: Option<TreeKind>,
    pub lambda1: f64,
    pub oracle_lambda1: f64,
    pub lambda_deviation: f64,
    /// `|1/λ₁ − max branch ρ|` (Type 1) or `|1/λ₁ − ρ(M₁ − γ*S₁)|` (Type 2).
    pub characterization_gap: f64,
    pub bottleneck_deviation: f64,
    pub laplacian_bottleneck_deviation: f64,
    /// `‖𝓛g − λ₁g‖_∞ / max(1, ‖g‖_∞)`.
    pub relative_residual: f64,
    pub orth_residual: f64,
    /// `|ρ(M₁ − γ*S₁) − ρ(M₂ − (1 − γ*)S₂)|`, Type 2 only.
    pub fixed_point_gap: Option<f64>,
    pub gamma: Option<f64>,
    pub walk_matches_scan: bool,
    pub verdicts: Vec<TheoremVerdict>,
    /// Case reported by the monotonicity and block checkers matches the
    /// classification (zero vertex = characteristic vertex, mixed block =
    /// characteristic edge).
    pub case_matches: bool,
    pub perron_points_to_site: bool,
    pub signs_consistent: bool,
    pub failures: Vec<String>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

/// Runs every check on one tree.
pub fn check_tree(t: &Tree, tol: &Tolerances) -> TrialOutcome {
    let mut out = TrialOutcome {
        n: t.n(),
        kind: None,
        lambda1: f64::NAN,
        oracle_lambda1: f64::NAN,
        lambda_deviation: f64::NAN,
        characterization_gap: f64::NAN,
        bottleneck_deviation: 0.0,
        laplacian_bottleneck_deviation: 0.0,
        relative_residual: f64::NAN,
        orth_residual: f64::NAN,
        fixed_point_gap: None,
        gamma: None,
        walk_matches_scan: false,
        verdicts: Vec::new(),
        case_matches: false,
        perron_points_to_site: false,
        signs_consistent: false,
        failures: Vec::new(),
    };

    if let Err(e) = check_bottlenecks(t, tol, &mut out) {
        out.failures.push(format!("bottleneck oracle: {e}"));
    }
    check_spectrum(t, tol, &mut out);

    let report = match lambda1(t, tol) {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(format!("lambda1: {e}"));
            return out;
        }
    };
    record_report(t, tol, &report, &mut out);
    out
}

/// Formula against inverse for every branch at every vertex.
fn check_bottlenecks(t: &Tree, tol: &Tolerances, out: &mut TrialOutcome) -> Result<(), crate::SpectralError> {
    for pb in scan_all_vertices(t, tol)? {
        let k = pb.vertex;
        for (branch, formula) in pb.branches.branches.iter().zip(&pb.bottlenecks) {
            let oracle = bottleneck_oracle(t, k, branch, tol)?;
            out.bottleneck_deviation = out
                .bottleneck_deviation
                .max(formula.matrix.max_abs_diff(&oracle.matrix));
            let lap = laplacian_bottleneck_oracle(t, k, branch, tol)?;
            for (x, &i) in branch.vertices.iter().enumerate() {
                for (y, &j) in branch.vertices.iter().enumerate().skip(x) {
                    let count = shared_path_count(t, i, j, k)? as f64;
                    out.laplacian_bottleneck_deviation = out
                        .laplacian_bottleneck_deviation
                        .max((lap.get(x, y) - count).abs());
                }
            }
        }
    }
    if out.bottleneck_deviation > BOTTLENECK_DEVIATION {
        out.failures.push(format!(
            "normalized bottleneck formula deviates by {:e}",
            out.bottleneck_deviation
        ));
    }
    if out.laplacian_bottleneck_deviation > BOTTLENECK_DEVIATION {
        out.failures.push(format!(
            "Laplacian bottleneck deviates by {:e}",
            out.laplacian_bottleneck_deviation
        ));
    }
    Ok(())
}

/// Range `[0, 2]` and the `D^{1/2}𝟏` kernel vector.
fn check_spectrum(t: &Tree, tol: &Tolerances, out: &mut TrialOutcome) {
    let e = match jacobi_eigen(&normalized_laplacian(t), tol) {
        Ok(e) => e,
        Err(err) => {
            out.failures.push(format!("oracle: {err}"));
            return;
        }
    };
    let (lo, hi) = (e.values[0], *e.values.last().expect("n >= 2"));
    if lo < -SPECTRUM_SLACK || hi > 2.0 + SPECTRUM_SLACK {
        out.failures.push(format!("spectrum [{lo}, {hi}] leaves [0, 2]"));
    }
    if lo.abs() > SPECTRUM_SLACK {
        out.failures
            .push(format!("smallest eigenvalue {lo:e} is not zero"));
    }
    let s: Vec<f64> = t.degrees().iter().map(|&d| (d as f64).sqrt()).collect();
    let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    let cos: f64 = e.vector(0).iter().zip(&s).map(|(a, b)| a * b / norm).sum();
    if (cos.abs() - 1.0).abs() > SPECTRUM_SLACK {
        out.failures
            .push(format!("kernel vector is not parallel to D^(1/2)1 (cos = {cos})"));
    }
}

fn record_report(t: &Tree, tol: &Tolerances, report: &SpectralReport, out: &mut TrialOutcome) {
    let class = &report.classification;
    out.kind = Some(class.kind);
    out.lambda1 = report.lambda1;
    out.oracle_lambda1 = report.oracle_lambda1;
    out.gamma = report.gamma;
    out.lambda_deviation = (report.lambda1 - report.oracle_lambda1).abs();
    if out.lambda_deviation > LAMBDA_DEVIATION {
        out.failures.push(format!(
            "lambda1 {} differs from oracle {} by {:e}",
            report.lambda1, report.oracle_lambda1, out.lambda_deviation
        ));
    }

    let g_max = max_of(report.g.iter().map(|x| x.abs()));
    out.relative_residual = report.residual_inf / g_max.max(1.0);
    out.orth_residual = report.orth_residual;
    if out.relative_residual > EIGEN_RESIDUAL {
        out.failures
            .push(format!("eigen residual {:e}", report.residual_inf));
    }
    if out.orth_residual > EIGEN_RESIDUAL {
        out.failures
            .push(format!("orthogonality residual {:e}", report.orth_residual));
    }

    let inverse = 1.0 / report.lambda1;
    out.characterization_gap = match (class.characteristic, report.type2) {
        (Characteristic::Vertex(_), _) => {
            let top = max_of(class.perron_values[0].radii.iter().copied());
            (inverse - top).abs() / top
        }
        (Characteristic::Edge(..), Some(d)) => {
            let gap = (d.rho_first - d.rho_second).abs();
            out.fixed_point_gap = Some(gap);
            if gap > FIXED_POINT_GAP {
                out.failures
                    .push(format!("shifted radii differ by {gap:e} at gamma*"));
            }
            (inverse - d.rho_first).abs() / d.rho_first
        }
        (Characteristic::Edge(..), None) => {
            out.failures.push("Type 2 report without bisection detail".into());
            f64::NAN
        }
    };
    if out.characterization_gap.is_nan() || out.characterization_gap > 1e-12 {
        out.failures.push(format!(
            "1/lambda1 does not match the characterizing radius (relative gap {:e})",
            out.characterization_gap
        ));
    }

    match scan_all_vertices(t, tol).and_then(|scan| {
        let twin = classify_from_scan(&scan)?;
        Ok((scan, twin))
    }) {
        Ok((scan, twin)) => {
            out.walk_matches_scan =
                twin.characteristic == class.characteristic && twin.perron_values == class.perron_values;
            if !out.walk_matches_scan {
                out.failures.push(format!(
                    "walk found {:?}, exhaustive scan found {:?}",
                    class.characteristic, twin.characteristic
                ));
            }
            // Every non-characteristic vertex points at the characteristic site.
            out.perron_points_to_site = scan.iter().all(|pb| {
                if class.characteristic.contains(pb.vertex) {
                    return true;
                }
                pb.unique().is_some_and(|b| {
                    let branch = &pb.branches.branches[b];
                    class
                        .characteristic
                        .vertices()
                        .iter()
                        .all(|&c| branch.contains(c))
                })
            });
            if !out.perron_points_to_site {
                out.failures
                    .push("a unique Perron branch misses the characteristic site".into());
            }
            if let Characteristic::Edge(i, j) = class.characteristic {
                let m1 = &scan[j].bottlenecks[scan[j].branches.component[i].expect("i != j")];
                let m2 = &scan[i].bottlenecks[scan[i].branches.component[j].expect("i != j")];
                for m in [m1, m2] {
                    if m.floor_margin() < -1e-12 || m.anchor_row_defect() > 1e-9 * m.matrix.max_abs() {
                        out.failures.push(format!(
                            "bottleneck at {} through {} breaks the anchor-row or floor identity",
                            m.root, m.anchor
                        ));
                    }
                }
            }
        }
        Err(e) => out.failures.push(format!("exhaustive scan: {e}")),
    }

    let f_signs = SignPattern::of(&report.f, tol.sign_band);
    let g_signs = SignPattern::of(&report.g, tol.sign_band);
    out.signs_consistent = f_signs.signs == g_signs.signs;
    if !out.signs_consistent {
        out.failures.push("sign(f) differs from sign(g)".into());
    }

    out.verdicts = vec![
        check_valuation(t, &report.f, tol),
        check_valuation_g(t, &report.g, tol),
        check_monotonicity(t, &report.f, tol),
        check_block_signs(t, &report.g, tol),
    ];
    for v in out.verdicts.iter().filter(|v| !v.pass) {
        out.failures.push(v.to_string());
    }

    let expected_case = match class.characteristic {
        Characteristic::Vertex(v) => StructureCase::NoMixedBlock { zero_vertex: v },
        Characteristic::Edge(i, j) => StructureCase::UniqueMixedBlock { a: i, b: j },
    };
    out.case_matches = out.verdicts[2..].iter().all(|v| v.case == Some(expected_case));
    if !out.case_matches {
        out.failures.push(format!(
            "structural case {:?} does not match classification {:?}",
            out.verdicts[2].case, class.characteristic
        ));
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub valuation: usize,
    pub valuation_g: usize,
    pub monotonicity: usize,
    pub block_signs: usize,
    pub case_matches: usize,
    pub perron_direction: usize,
    pub sign_consistency: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub n: usize,
    pub seed: u64,
    pub reasons: Vec<String>,
}

/// Aggregate over an ensemble of random trees. Trials are reduced in trial
/// order, so the summary does not depend on scheduling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub type1: usize,
    pub type2: usize,
    pub max_lambda1_deviation: f64,
    pub max_bottleneck_deviation: f64,
    pub max_laplacian_bottleneck_deviation: f64,
    pub max_relative_residual: f64,
    pub max_orth_residual: f64,
    pub max_fixed_point_gap: f64,
    pub classification_agreement: usize,
    pub verdict_passes: VerdictCounts,
    /// The first few failing trials.
    pub failures: Vec<TrialFailure>,
}

/// Trial parameters: `n` uniform in `n_min..=n_max` and a tree seed, both
/// drawn in sequence from ChaCha8 seeded with `seed`.
pub fn trial_parameters(n_min: usize, n_max: usize, trials: usize, seed: u64) -> Vec<(usize, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| (rng.gen_range(n_min..=n_max), rng.gen::<u64>()))
        .collect()
}

/// Draws `trials` random trees and runs [`check_tree`] on each, in parallel.
pub fn ensemble_crosscheck(
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<EnsembleSummary, EnsembleError> {
    if n_min < 2 || n_min > n_max {
        return Err(EnsembleError::InvalidRange { n_min, n_max });
    }
    if trials == 0 {
        return Err(EnsembleError::NoTrials);
    }
    let params = trial_parameters(n_min, n_max, trials, seed);
    let outcomes: Vec<TrialOutcome> = params
        .par_iter()
        .map(|&(n, s)| {
            let t = random_tree(n, s).expect("n >= 2");
            check_tree(&t, tol)
        })
        .collect();

    let mut summary = EnsembleSummary {
        n_min,
        n_max,
        trials,
        seed,
        passed: 0,
        failed: 0,
        type1: 0,
        type2: 0,
        max_lambda1_deviation: 0.0,
        max_bottleneck_deviation: 0.0,
        max_laplacian_bottleneck_deviation: 0.0,
        max_relative_residual: 0.0,
        max_orth_residual: 0.0,
        max_fixed_point_gap: 0.0,
        classification_agreement: 0,
        verdict_passes: VerdictCounts::default(),
        failures: Vec::new(),
    };
    for (trial, (o, &(n, s))) in outcomes.iter().zip(&params).enumerate() {
        if o.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            if summary.failures.len() < MAX_REPORTED_FAILURES {
                summary.failures.push(TrialFailure {
                    trial,
                    n,
                    seed: s,
                    reasons: o.failures.clone(),
                });
            }
        }
        match o.kind {
            Some(TreeKind::Type1) => summary.type1 += 1,
            Some(TreeKind::Type2) => summary.type2 += 1,
            None => {}
        }
        // NaN (a trial that never produced λ₁) must not hide behind f64::max.
        let worst = |acc: f64, x: f64| if x.is_nan() { f64::INFINITY } else { acc.max(x) };
        summary.max_lambda1_deviation = worst(summary.max_lambda1_deviation, o.lambda_deviation);
        summary.max_bottleneck_deviation = worst(summary.max_bottleneck_deviation, o.bottleneck_deviation);
        summary.max_laplacian_bottleneck_deviation = worst(
            summary.max_laplacian_bottleneck_deviation,
            o.laplacian_bottleneck_deviation,
        );
        summary.max_relative_residual = worst(summary.max_relative_residual, o.relative_residual);
        summary.max_orth_residual = worst(summary.max_orth_residual, o.orth_residual);
        if let Some(gap) = o.fixed_point_gap {
            summary.max_fixed_point_gap = worst(summary.max_fixed_point_gap, gap);
        }
        summary.classification_agreement += o.walk_matches_scan as usize;
        let pass = |i: usize| o.verdicts.get(i).is_some_and(|v| v.pass) as usize;
        let c = &mut summary.verdict_passes;
        c.valuation += pass(0);
        c.valuation_g += pass(1);
        c.monotonicity += pass(2);
        c.block_signs += pass(3);
        c.case_matches += o.case_matches as usize;
        c.perron_direction += o.perron_points_to_site as usize;
        c.sign_consistency += o.signs_consistent as usize;
    }
    Ok(summary)
}

/// Walk classification checked against the exhaustive scan alone.
pub fn walk_matches_scan(t: &Tree, tol: &Tolerances) -> Result<bool, crate::SpectralError> {
    let walk = crate::spectral::classify(t, tol)?;
    let scan = classify_exhaustive(t, tol)?;
    Ok(walk.characteristic == scan.characteristic)
}

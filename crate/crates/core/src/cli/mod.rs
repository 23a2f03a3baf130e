//! Command-line front end: `analyze`, `bottleneck`, `verify` and `gen`.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 verification failure.
//! Every vertex in user-facing output is an external label from the input.

mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::graph::{branches_at, parse_edge_list, random_tree, Tree, Vertex};
use crate::spectral::{bottleneck_oracle, lambda1, perron_branches_at, SpectralError, SpectralReport};
use crate::verify::{
    check_block_signs, check_monotonicity, check_valuation, check_valuation_g, ensemble_crosscheck,
    EnsembleSummary, SignPattern,
};
use crate::Tolerances;

pub use report::{
    BottleneckBranch, BottleneckDocument, CaseDoc, CheckDoc, ClassificationDoc, InputDescriptor,
    ReportDocument, Residuals, SitePerronDoc, VerifyDocument, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Certificate thresholds shared with the acceptance suite.
const CERTIFICATE: f64 = 1e-8;
const BOTTLENECK_DEVIATION: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "perron-tree",
    version,
    about = "λ₁ of the normalized Laplacian of a tree"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a tree, compute λ₁ with an eigenvector and run the structural checks.
    Analyze(AnalyzeArgs),
    /// Dump the normalized bottleneck matrix of every branch at a vertex.
    Bottleneck(BottleneckArgs),
    /// Cross-check an ensemble of random trees against the dense oracle.
    Verify(VerifyArgs),
    /// Write a random tree as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Override the Perron tie band and the sign zero band.
    #[arg(long, value_parser = positive_f64)]
    tol: Option<f64>,
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        match self.tol {
            Some(t) => Tolerances::default().with_tie(t),
            None => Tolerances::default(),
        }
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge-list file.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generate a random tree instead of reading a file.
    #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
    gen: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: Common,
    /// Record wall-clock time in the report (off by default so output is reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct BottleneckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Label of the vertex whose branches are dumped.
    #[arg(long)]
    vertex: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    nmin: usize,
    #[arg(long, default_value_t = 60)]
    nmax: usize,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

/// A failure that ends the command with a message on the diagnostic stream.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn verify(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Bottleneck(a) => cmd_bottleneck(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(input: &InputArgs) -> Result<(Tree, InputDescriptor), Failure> {
    match (&input.input, &input.gen) {
        (_, Some(g)) => {
            let (n, seed) = (g[0] as usize, g[1]);
            let t = random_tree(n, seed).map_err(|e| Failure::input(format!("--gen: {e}")))?;
            Ok((t, InputDescriptor::Generated { n, seed }))
        }
        (Some(path), None) => {
            let shown = path.display().to_string();
            let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{shown}: Io: {e}")))?;
            let t = parse_edge_list(&text).map_err(|e| Failure::input(format!("{shown}: {e}")))?;
            Ok((t, InputDescriptor::File { path: shown }))
        }
        (None, None) => Err(Failure::input("no input given")),
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("stdout: Io: {e}")))
}

fn emit_text(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("stdout: Io: {e}")))
}

/// Runs the full pipeline on `t` and assembles the report.
pub fn analyze_tree(
    t: &Tree,
    input: InputDescriptor,
    tol: &Tolerances,
) -> Result<ReportDocument, SpectralError> {
    let report = lambda1(t, tol)?;
    Ok(build_report(t, input, &report, tol))
}

fn build_report(t: &Tree, input: InputDescriptor, r: &SpectralReport, tol: &Tolerances) -> ReportDocument {
    let label = |v: usize| t.label(v);
    let class = &r.classification;
    let g_max = r.g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let residuals = Residuals {
        eigen_inf: r.residual_inf,
        eigen_relative: r.residual_inf / g_max.max(1.0),
        orthogonality: r.orth_residual,
        oracle_deviation: (r.lambda1 - r.oracle_lambda1).abs(),
    };

    let verdicts = [
        check_valuation(t, &r.f, tol),
        check_valuation_g(t, &r.g, tol),
        check_monotonicity(t, &r.f, tol),
        check_block_signs(t, &r.g, tol),
    ];
    let mut checks: Vec<CheckDoc> = verdicts
        .iter()
        .map(|v| CheckDoc {
            name: format!("{:?}", v.theorem),
            pass: v.pass,
            structure: v.case.map(|c| CaseDoc::from_case(c, &label)),
        })
        .collect();
    let signs_match =
        SignPattern::of(&r.f, tol.sign_band).signs == SignPattern::of(&r.g, tol.sign_band).signs;
    for (name, pass) in [
        ("EigenResidual", residuals.eigen_relative <= CERTIFICATE),
        ("Orthogonality", residuals.orthogonality <= CERTIFICATE),
        ("OracleAgreement", residuals.oracle_deviation <= CERTIFICATE),
        ("SignConsistency", signs_match),
    ] {
        checks.push(CheckDoc {
            name: name.into(),
            pass,
            structure: None,
        });
    }

    let to_map =
        |x: &[f64]| -> BTreeMap<u64, f64> { x.iter().enumerate().map(|(v, &y)| (label(v), y)).collect() };
    ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        input,
        n: t.n(),
        classification: ClassificationDoc {
            kind: class.kind,
            characteristic: class.characteristic.vertices().into_iter().map(label).collect(),
            walk_trace: class.walk_trace.iter().map(|&v| label(v)).collect(),
        },
        lambda1: r.lambda1,
        gamma: r.gamma,
        oracle_lambda1: r.oracle_lambda1,
        residuals,
        perron_values: class
            .perron_values
            .iter()
            .map(|s| SitePerronDoc {
                vertex: label(s.vertex),
                anchors: s.anchors.iter().map(|&a| label(a)).collect(),
                radii: s.radii.clone(),
            })
            .collect(),
        g: to_map(&r.g),
        f: to_map(&r.f),
        checks,
        timing_ms: None,
    }
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (t, input) = load(&a.input)?;
    let tol = a.common.tolerances();
    let start = Instant::now();
    let mut doc = analyze_tree(&t, input, &tol).map_err(|e| Failure::verify(e.to_string()))?;
    if a.timing {
        doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    match a.common.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => emit_text(out, &doc.to_text())?,
    }
    Ok(if doc.all_pass() { EXIT_OK } else { EXIT_VERIFY })
}

/// Formula bottleneck matrix, radius and oracle deviation for every branch at `k`.
pub fn bottleneck_report(
    t: &Tree,
    input: InputDescriptor,
    k: Vertex,
    tol: &Tolerances,
) -> Result<BottleneckDocument, SpectralError> {
    let at = perron_branches_at(t, k, tol)?;
    let set = branches_at(t, k);
    let mut branches = Vec::with_capacity(set.branches.len());
    for (idx, ((branch, m), p)) in set
        .branches
        .iter()
        .zip(&at.bottlenecks)
        .zip(&at.perron)
        .enumerate()
    {
        let oracle = bottleneck_oracle(t, k, branch, tol)?;
        branches.push(BottleneckBranch {
            anchor: t.label(branch.anchor),
            vertices: branch.vertices.iter().map(|&v| t.label(v)).collect(),
            matrix: m.matrix.to_rows(),
            rho: p.value,
            perron: at.perron_set.contains(&idx),
            max_deviation: m.matrix.max_abs_diff(&oracle.matrix),
        });
    }
    Ok(BottleneckDocument {
        schema_version: SCHEMA_VERSION.into(),
        input,
        vertex: t.label(k),
        branches,
    })
}

fn cmd_bottleneck(a: &BottleneckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (t, input) = load(&a.input)?;
    let tol = a.common.tolerances();
    let k = t
        .vertex_of(a.vertex)
        .map_err(|e| Failure::input(format!("--vertex: {e}")))?;
    let doc = bottleneck_report(&t, input, k, &tol).map_err(|e| Failure::verify(e.to_string()))?;
    match a.common.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => emit_text(out, &doc.to_text())?,
    }
    let ok = doc
        .branches
        .iter()
        .all(|b| b.max_deviation <= BOTTLENECK_DEVIATION);
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let tol = a.common.tolerances();
    let summary: EnsembleSummary = ensemble_crosscheck(a.nmin, a.nmax, a.trials, a.seed, &tol)
        .map_err(|e| Failure::input(e.to_string()))?;
    let doc = VerifyDocument {
        schema_version: SCHEMA_VERSION.into(),
        summary,
    };
    match a.common.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => emit_text(out, &doc.to_text())?,
    }
    Ok(if doc.summary.failed == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let t = random_tree(a.n, a.seed).map_err(|e| Failure::input(format!("--n: {e}")))?;
    let text = t.to_edge_list();
    match &a.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::input(format!("{}: Io: {e}", path.display())))?
        }
        None => emit_text(out, &text)?,
    }
    Ok(EXIT_OK)
}

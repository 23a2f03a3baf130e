//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Tolerances are fixed here and never loosened.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use perron_tree::graph::{branches_at, random_tree, shared_path_count, Tree};
use perron_tree::linalg::jacobi_eigen;
use perron_tree::spectral::{
    bottleneck_formula, bottleneck_oracle, classify, classify_exhaustive, lambda1,
    laplacian_bottleneck_oracle, normalized_laplacian, scan_all_vertices, Characteristic, SpectralReport,
    TreeKind,
};
use perron_tree::verify::{
    check_block_signs, check_monotonicity, check_valuation, check_valuation_g, trial_parameters,
    StructureCase,
};
use perron_tree::{parse_edge_list, Tolerances};

const MASTER_SEED: u64 = 20_240_917;
const FIXTURE_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-8;
const BOTTLENECK_TOL: f64 = 1e-9;
const FIXED_POINT_TOL: f64 = 1e-10;
const SYMMETRIC_GAMMA_TOL: f64 = 1e-10;
const CERTIFICATE_TOL: f64 = 1e-8;

struct Outcome {
    failures: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Second smallest eigenvalue of the dense normalized Laplacian.
fn jacobi_lambda1(t: &Tree) -> f64 {
    jacobi_eigen(&normalized_laplacian(t), &tol())
        .expect("Jacobi converges")
        .values[1]
}

fn corpus(n_min: usize, n_max: usize, trials: usize, seed: u64) -> Vec<Tree> {
    trial_parameters(n_min, n_max, trials, seed)
        .into_iter()
        .map(|(n, s)| random_tree(n, s).unwrap())
        .collect()
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> Tree {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.edges"))).unwrap();
    parse_edge_list(&text).unwrap()
}

fn labels(t: &Tree, c: Characteristic) -> Vec<u64> {
    c.vertices().into_iter().map(|v| t.label(v)).collect()
}

/// Criterion 1: closed-form fixtures.
fn closed_form_fixtures() -> Outcome {
    let mut o = Outcome::new();
    let mut cases: Vec<(String, f64, TreeKind, Vec<u64>)> = vec![
        ("p2".into(), 2.0, TreeKind::Type2, vec![1, 2]),
        ("p3".into(), 1.0, TreeKind::Type1, vec![2]),
        ("p4".into(), 0.5, TreeKind::Type2, vec![2, 3]),
    ];
    for k in 3..=10 {
        cases.push((format!("star{k}"), 1.0, TreeKind::Type1, vec![1]));
    }
    for (name, exact, kind, site) in cases {
        let t = fixture(&name);
        let r = lambda1(&t, &tol()).unwrap();
        let oracle = jacobi_lambda1(&t);
        o.expect((oracle - exact).abs() <= FIXTURE_TOL, || {
            format!("{name}: oracle {oracle} is not the closed form {exact}")
        });
        o.expect((r.lambda1 - exact).abs() <= FIXTURE_TOL, || {
            format!("{name}: lambda1 {} differs from {exact}", r.lambda1)
        });
        let got = labels(&t, r.classification.characteristic);
        o.expect(r.classification.kind == kind && got == site, || {
            format!(
                "{name}: got {:?} at {got:?}, want {kind:?} at {site:?}",
                r.classification.kind
            )
        });
    }
    o
}

/// Criterion 2: characterization against the dense oracle, walk against scan.
fn oracle_equivalence(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        let r = lambda1(t, &tol()).unwrap();
        let oracle = jacobi_lambda1(t);
        o.expect((r.lambda1 - oracle).abs() <= ORACLE_TOL, || {
            format!("tree {i} (n={}): lambda1 {} vs oracle {oracle}", t.n(), r.lambda1)
        });
        let walk = classify(t, &tol()).unwrap();
        let scan = classify_exhaustive(t, &tol()).unwrap();
        o.expect(walk.characteristic == scan.characteristic, || {
            format!(
                "tree {i}: walk {:?} vs scan {:?}",
                walk.characteristic, scan.characteristic
            )
        });
    }
    o
}

/// Criterion 3: bottleneck formula against the inverse of the branch block.
fn bottleneck_formula_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        for k in 0..t.n() {
            for branch in branches_at(t, k).branches {
                let formula = bottleneck_formula(t, k, &branch).unwrap();
                let oracle = bottleneck_oracle(t, k, &branch, &tol()).unwrap();
                let dev = formula.matrix.max_abs_diff(&oracle.matrix);
                o.expect(dev <= BOTTLENECK_TOL, || {
                    format!(
                        "tree {i}, vertex {k}, branch via {}: deviation {dev:e}",
                        branch.anchor
                    )
                });
            }
        }
    }
    o
}

/// Criterion 4: inverse of the Laplacian branch block counts shared path edges.
fn shared_path_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        for k in 0..t.n() {
            for branch in branches_at(t, k).branches {
                let inv = laplacian_bottleneck_oracle(t, k, &branch, &tol()).unwrap();
                let mut dev = 0.0f64;
                for (x, &a) in branch.vertices.iter().enumerate() {
                    for (y, &b) in branch.vertices.iter().enumerate() {
                        let count = shared_path_count(t, a, b, k).unwrap() as f64;
                        dev = dev.max((inv.get(x, y) - count).abs());
                    }
                }
                o.expect(dev <= BOTTLENECK_TOL, || {
                    format!(
                        "tree {i}, vertex {k}, branch via {}: deviation {dev:e}",
                        branch.anchor
                    )
                });
            }
        }
    }
    o
}

/// Criterion 5: Type 2 fixed point, and γ* = 1/2 on edge-symmetric trees.
fn fixed_point_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        let r = lambda1(t, &tol()).unwrap();
        let Some(d) = r.type2 else { continue };
        let gap = (d.rho_first - d.rho_second).abs();
        o.expect(gap <= FIXED_POINT_TOL, || {
            format!("tree {i}: shifted radii differ by {gap:e}")
        });
        let oracle = jacobi_lambda1(t);
        o.expect((1.0 / d.rho_first - oracle).abs() <= ORACLE_TOL, || {
            format!("tree {i}: 1/rho {} vs oracle {oracle}", 1.0 / d.rho_first)
        });
    }
    let symmetric = [
        ("p2", fixture("p2")),
        ("p4", fixture("p4")),
        ("p6", fixture("p6")),
        ("double_star2", fixture("double_star2")),
        ("double_star3", fixture("double_star3")),
        ("double_star(5)", Tree::double_star(5).unwrap()),
        ("p10", Tree::path(10).unwrap()),
    ];
    for (name, t) in symmetric {
        let r = lambda1(&t, &tol()).unwrap();
        o.expect(r.classification.kind == TreeKind::Type2, || {
            format!("{name} is not Type 2")
        });
        let gamma = r.gamma.unwrap_or(f64::NAN);
        o.expect((gamma - 0.5).abs() <= SYMMETRIC_GAMMA_TOL, || {
            format!("{name}: gamma {gamma}")
        });
    }
    o
}

/// Criterion 6: `g` is an eigenvector for λ₁, orthogonal to `D^{1/2}𝟏`.
/// Both quantities are recomputed here from the dense matrix.
fn certificate_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        let r = lambda1(t, &tol()).unwrap();
        let lg = normalized_laplacian(t).mul_vec(&r.g);
        let residual = lg
            .iter()
            .zip(&r.g)
            .fold(0.0f64, |m, (a, b)| m.max((a - r.lambda1 * b).abs()));
        let g_inf = r.g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        o.expect(residual <= CERTIFICATE_TOL * g_inf.max(1.0), || {
            format!("tree {i}: residual {residual:e}")
        });
        let orth: f64 =
            r.g.iter()
                .zip(t.degrees())
                .map(|(x, d)| x * (d as f64).sqrt())
                .sum();
        o.expect(orth.abs() <= CERTIFICATE_TOL, || {
            format!("tree {i}: 1ᵀD^(1/2)g = {orth:e}")
        });
        o.expect(g_inf > 0.5 / (t.n() as f64).sqrt(), || {
            format!("tree {i}: g is degenerate")
        });
    }
    o
}

fn expected_case(c: Characteristic) -> StructureCase {
    match c {
        Characteristic::Vertex(v) => StructureCase::NoMixedBlock { zero_vertex: v },
        Characteristic::Edge(a, b) => StructureCase::UniqueMixedBlock { a, b },
    }
}

/// Criterion 7: the four structural checkers on the constructed eigenvector.
fn structural_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        let r: SpectralReport = lambda1(t, &tol()).unwrap();
        let verdicts = [
            check_valuation(t, &r.f, &tol()),
            check_valuation_g(t, &r.g, &tol()),
            check_monotonicity(t, &r.f, &tol()),
            check_block_signs(t, &r.g, &tol()),
        ];
        for v in &verdicts {
            o.expect(v.pass, || format!("tree {i}: {v}"));
        }
        let want = expected_case(r.classification.characteristic);
        for v in &verdicts[2..] {
            o.expect(v.case == Some(want), || {
                format!(
                    "tree {i}: {:?} found {:?}, classification gives {want:?}",
                    v.theorem, v.case
                )
            });
        }
    }
    o
}

/// Criterion 8: every other vertex's unique Perron branch holds the site.
fn perron_direction_check(trees: &[Tree]) -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in trees.iter().enumerate() {
        let site = classify(t, &tol()).unwrap().characteristic;
        for pb in scan_all_vertices(t, &tol()).unwrap() {
            if site.contains(pb.vertex) {
                continue;
            }
            let holds = pb.unique().is_some_and(|b| {
                let branch = &pb.branches.branches[b];
                site.vertices().iter().all(|&c| branch.contains(c))
            });
            o.expect(holds, || {
                format!("tree {i}, vertex {}: Perron branch misses {site:?}", pb.vertex)
            });
        }
    }
    o
}

fn run_bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_perron-tree"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Criterion 9: byte-identical `analyze` JSON and `gen` output.
fn determinism_check() -> Outcome {
    let mut o = Outcome::new();
    let mut names: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    for path in names {
        let p = path.to_str().unwrap();
        let first = run_bin(&["analyze", p, "--format", "json"]);
        let second = run_bin(&["analyze", p, "--format", "json"]);
        o.expect(first.0 == 0 && !first.1.is_empty(), || {
            format!("{p}: exit {}", first.0)
        });
        o.expect(first == second, || {
            format!("{p}: analyze output differs between runs")
        });
    }
    for (n, seed) in [(2, 9), (5, 3), (17, 0), (60, 123)] {
        let (n, seed) = (n.to_string(), seed.to_string());
        let args = ["gen", "--n", &n, "--seed", &seed];
        let first = run_bin(&args);
        o.expect(first == run_bin(&args), || {
            format!("gen n={n} seed={seed} differs between runs")
        });
    }
    o
}

fn report(index: usize, title: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            o.failures.push(format!("took {elapsed:?}, budget {b:?}"));
        }
    }
    let pass = o.failures.is_empty();
    println!(
        "criterion {index}: {} {title} ({} checks, {} failures, {:.2?})",
        if pass { "PASS" } else { "FAIL" },
        o.checked,
        o.failures.len(),
        elapsed
    );
    for msg in o.failures.iter().take(5) {
        println!("    {msg}");
    }
    pass
}

fn main() {
    let large = corpus(2, 60, 500, MASTER_SEED);
    let small = corpus(2, 30, 100, MASTER_SEED + 1);
    let secs = Duration::from_secs;

    let results = [
        report(1, "closed-form fixtures", Some(secs(1)), closed_form_fixtures),
        report(
            2,
            "oracle equivalence, 500 trees n in [2, 60]",
            Some(secs(60)),
            || oracle_equivalence(&large),
        ),
        report(3, "bottleneck formula, 100 trees n <= 30", Some(secs(60)), || {
            bottleneck_formula_check(&small)
        }),
        report(4, "shared path counts, 100 trees n <= 30", None, || {
            shared_path_check(&small)
        }),
        report(5, "Type 2 fixed point and symmetric gamma", None, || {
            fixed_point_check(&large)
        }),
        report(6, "eigenvector certificates", None, || certificate_check(&large)),
        report(7, "structural checkers", None, || structural_check(&large)),
        report(
            8,
            "Perron branches point to the characteristic site",
            None,
            || perron_direction_check(&large),
        ),
        report(9, "determinism of analyze and gen", None, determinism_check),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

use super::{BlockSign, Clause, Sign, SignPattern, Site, StructureCase, TheoremId, TheoremVerdict};
use crate::graph::{block_decomposition, branches_at, RootedTree, Tree, Vertex};
use crate::Tolerances;

fn mixed_edges(t: &Tree, pattern: &SignPattern) -> Vec<(Vertex, Vertex)> {
    t.edges()
        .iter()
        .copied()
        .filter(|&(a, b)| {
            matches!(
                (pattern.get(a), pattern.get(b)),
                (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive)
            )
        })
        .collect()
}

/// Monotonicity of the harmonic eigenfunction `f` along pure paths of a
/// tree, where every edge is a block and every path is pure.
///
/// * No mixed edge: there is a unique articulation point `z` with `f(z) = 0`
///   and a nonzero neighbor, no branch at `z` holds both signs, and along
///   every path leaving `z` the articulation values increase (positive
///   branch), decrease (negative branch) or vanish.
/// * One mixed edge `{a, b}`: every other edge is single-signed and, along
///   paths leaving the edge through `a`, articulation values move away from
///   zero in the direction of `sign(f(a))`.
/// * More than one mixed edge fails.
///
/// Consecutive articulation values must differ by more than the sign band.
pub fn check_monotonicity(t: &Tree, f: &[f64], tol: &Tolerances) -> TheoremVerdict {
    assert_eq!(f.len(), t.n(), "vector length must match the vertex count");
    let pattern = SignPattern::of(f, tol.sign_band);
    let mut verdict = TheoremVerdict::new(TheoremId::Monotonicity);
    let mixed = mixed_edges(t, &pattern);

    match mixed.as_slice() {
        [] => {
            let frontier = pattern.zero_frontier(t);
            let &[z] = frontier.as_slice() else {
                return verdict.fail(format!(
                    "expected one zero vertex with a nonzero neighbor, found {frontier:?}"
                ));
            };
            if t.degree(z) < 2 {
                return verdict.fail(format!("zero vertex {z} is not an articulation point"));
            }
            verdict.case = Some(StructureCase::NoMixedBlock { zero_vertex: z });
            verdict.note(Site::Vertex(z), Clause::ZeroArticulation);

            let rooted = RootedTree::new(t, z);
            for branch in branches_at(t, z).branches {
                let has = |s: Sign| branch.vertices.iter().any(|&u| pattern.get(u) == s);
                if has(Sign::Positive) && has(Sign::Negative) {
                    return verdict.fail(format!(
                        "branch at {z} through {} holds both signs, so a sign-changing path avoids {z}",
                        branch.anchor
                    ));
                }
                match monotone_away(t, f, &pattern, &rooted, &branch.vertices, z) {
                    Ok(clause) => verdict.note(
                        Site::Branch {
                            root: z,
                            anchor: branch.anchor,
                        },
                        clause,
                    ),
                    Err(msg) => return verdict.fail(msg),
                }
            }
        }
        &[(a, b)] => {
            verdict.case = Some(StructureCase::UniqueMixedBlock { a, b });
            verdict.note(Site::Edge(a, b), Clause::MixedBlock);
            if let Some(&(x, y)) = t
                .edges()
                .iter()
                .find(|&&e| e != (a, b) && pattern.get(e.0) != pattern.get(e.1))
            {
                return verdict.fail(format!(
                    "edge {x}-{y} besides the mixed block is not single-signed"
                ));
            }
            for (start, other) in [(a, b), (b, a)] {
                // Hang the tree from the far endpoint so `start` is the first
                // vertex of every path leaving the mixed edge on its side.
                let rooted = RootedTree::new(t, other);
                let side: Vec<Vertex> = branches_at(t, other)
                    .branch_of(start)
                    .expect("start is adjacent to other")
                    .vertices
                    .clone();
                match monotone_away(t, f, &pattern, &rooted, &side, other) {
                    Ok(clause) => verdict.note(
                        Site::Branch {
                            root: other,
                            anchor: start,
                        },
                        clause,
                    ),
                    Err(msg) => return verdict.fail(msg),
                }
            }
        }
        many => {
            return verdict.fail(format!("{} mixed blocks: {many:?}", many.len()));
        }
    }
    verdict
}

/// Checks the articulation sequence on every path in `side` leaving `root`.
/// `root` itself is excluded from the sequence.
fn monotone_away(
    t: &Tree,
    f: &[f64],
    pattern: &SignPattern,
    rooted: &RootedTree,
    side: &[Vertex],
    root: Vertex,
) -> Result<Clause, String> {
    let articulation: Vec<Vertex> = side.iter().copied().filter(|&u| t.degree(u) >= 2).collect();
    let Some(&first) = articulation.first() else {
        return Ok(Clause::ZeroSequence);
    };
    let sign = pattern.get(first);
    if let Some(&u) = articulation.iter().find(|&&u| pattern.get(u) != sign) {
        return Err(format!(
            "articulation points {first} and {u} on the same side of {root} differ in sign"
        ));
    }
    for &u in &articulation {
        let parent = rooted.parent(u).expect("side excludes the root");
        if parent == root {
            continue;
        }
        let step = f[u] - f[parent];
        let ok = match sign {
            Sign::Positive => step > pattern.band,
            Sign::Negative => -step > pattern.band,
            Sign::Zero => true,
        };
        if !ok {
            return Err(format!(
                "articulation values {parent} -> {u} ({} -> {}) are not strictly monotone",
                f[parent], f[u]
            ));
        }
    }
    Ok(match sign {
        Sign::Positive => Clause::Increasing,
        Sign::Negative => Clause::Decreasing,
        Sign::Zero => Clause::ZeroSequence,
    })
}

/// Sign classes of the blocks (edges) of a tree under the eigenfunction `g`.
///
/// Case 1: no mixed block, a unique zero articulation point `z` with a
/// nonzero neighbor, and every block is single-signed once `z` is removed
/// from it. Case 2: exactly one mixed block and every other block positive,
/// negative or zero.
pub fn check_block_signs(t: &Tree, g: &[f64], tol: &Tolerances) -> TheoremVerdict {
    assert_eq!(g.len(), t.n(), "vector length must match the vertex count");
    let pattern = SignPattern::of(g, tol.sign_band);
    let mut verdict = TheoremVerdict::new(TheoremId::BlockSigns);
    let blocks = block_decomposition(t).blocks;
    let mixed: Vec<&Vec<Vertex>> = blocks
        .iter()
        .filter(|b| {
            b.iter().any(|&v| pattern.get(v) == Sign::Positive)
                && b.iter().any(|&v| pattern.get(v) == Sign::Negative)
        })
        .collect();

    let exempt = match mixed.as_slice() {
        [] => {
            let frontier = pattern.zero_frontier(t);
            let &[z] = frontier.as_slice() else {
                return verdict.fail(format!(
                    "no mixed block but zero vertices with nonzero neighbors are {frontier:?}"
                ));
            };
            if t.degree(z) < 2 {
                return verdict.fail(format!("zero vertex {z} is not an articulation point"));
            }
            verdict.case = Some(StructureCase::NoMixedBlock { zero_vertex: z });
            verdict.note(Site::Vertex(z), Clause::ZeroArticulation);
            Some(z)
        }
        [block] => {
            let (a, b) = (block[0], block[1]);
            verdict.case = Some(StructureCase::UniqueMixedBlock { a, b });
            verdict.note(Site::Edge(a, b), Clause::MixedBlock);
            None
        }
        many => return verdict.fail(format!("{} mixed blocks", many.len())),
    };

    for block in &blocks {
        if mixed.contains(&block) {
            continue;
        }
        let mut signs = block
            .iter()
            .filter(|&&v| Some(v) != exempt)
            .map(|&v| pattern.get(v));
        let first = signs.next().expect("a block has a vertex besides the exempt one");
        if signs.any(|s| s != first) {
            return verdict.fail(format!("block {block:?} is neither positive, negative nor zero"));
        }
        let class = match first {
            Sign::Positive => BlockSign::Positive,
            Sign::Negative => BlockSign::Negative,
            Sign::Zero => BlockSign::Zero,
        };
        verdict.note(Site::Edge(block[0], block[1]), Clause::PureBlock(class));
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi_eigen;
    use crate::spectral::{harmonic_eigenfunction, lambda1, normalized_laplacian};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn p3_case_one() {
        let t = Tree::path(3).unwrap();
        let v = check_monotonicity(&t, &[1.0, 0.0, -1.0], &tol());
        assert!(v.pass, "{v}");
        assert_eq!(v.case, Some(StructureCase::NoMixedBlock { zero_vertex: 1 }));
        let b = check_block_signs(&t, &[1.0, 0.0, -1.0], &tol());
        assert!(b.pass);
        assert_eq!(b.case, Some(StructureCase::NoMixedBlock { zero_vertex: 1 }));
    }

    #[test]
    fn p4_case_two() {
        let t = Tree::path(4).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        let v = check_monotonicity(&t, &r.f, &tol());
        assert!(v.pass, "{v}");
        assert_eq!(v.case, Some(StructureCase::UniqueMixedBlock { a: 1, b: 2 }));
        let b = check_block_signs(&t, &r.g, &tol());
        assert!(b.pass);
        let pure = b
            .diagnostics
            .iter()
            .filter(|d| matches!(d.clause, Clause::PureBlock(_)))
            .count();
        assert_eq!(pure, 2);
    }

    #[test]
    fn p5_oracle_vector_is_case_one() {
        // λ₁ of P₅ is simple, so the Jacobi column is the eigenvector up to sign.
        let t = Tree::path(5).unwrap();
        let e = jacobi_eigen(&normalized_laplacian(&t), &tol()).unwrap();
        let f = harmonic_eigenfunction(&t, &e.vector(1));
        let v = check_monotonicity(&t, &f, &tol());
        assert!(v.pass, "{v}");
        assert_eq!(v.case, Some(StructureCase::NoMixedBlock { zero_vertex: 2 }));
        let clauses: Vec<Clause> = v.diagnostics.iter().map(|d| d.clause).collect();
        assert!(clauses.contains(&Clause::Increasing) && clauses.contains(&Clause::Decreasing));
    }

    #[test]
    fn star_block_classes() {
        let t = Tree::star(3).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        let b = check_block_signs(&t, &r.g, &tol());
        assert!(b.pass, "{b}");
        let mut classes: Vec<BlockSign> = b
            .diagnostics
            .iter()
            .filter_map(|d| match d.clause {
                Clause::PureBlock(c) => Some(c),
                _ => None,
            })
            .collect();
        classes.sort_by_key(|c| *c as u8);
        assert_eq!(
            classes,
            vec![BlockSign::Positive, BlockSign::Negative, BlockSign::Zero]
        );
    }

    #[test]
    fn failures() {
        let t = Tree::path(4).unwrap();
        // Two mixed edges.
        assert!(!check_monotonicity(&t, &[1.0, -1.0, 1.0, -1.0], &tol()).pass);
        assert!(!check_block_signs(&t, &[1.0, -1.0, 1.0, -1.0], &tol()).pass);
        // One mixed edge but not monotone on the positive side.
        let t5 = Tree::path(5).unwrap();
        assert!(!check_monotonicity(&t5, &[2.0, 1.0, 1.5, -1.0, -2.0], &tol()).pass);
        // Zero vertex with a nonzero neighbor at two places.
        assert!(!check_monotonicity(&t5, &[1.0, 0.0, 0.0, 0.0, -1.0], &tol()).pass);
    }
}

use super::{Clause, Sign, SignPattern, Site, TheoremId, TheoremVerdict};
use crate::graph::{branches_at, Tree, Vertex};
use crate::Tolerances;

/// Valuation of the harmonic eigenfunction `f` at every cut vertex `v`.
///
/// 1. `f(v) > 0`: exactly one component of `T∖v` contains a negative vertex
///    and every vertex `u` of the other components has `f(u) > f(v)`
///    (`f(v) < 0` is checked on `−f`).
/// 2. `f(v) = 0` with a component holding both signs: it is the only such
///    component and all others vanish.
/// 3. `f(v) = 0` otherwise: every component is entirely positive, entirely
///    negative, or entirely zero.
pub fn check_valuation(t: &Tree, f: &[f64], tol: &Tolerances) -> TheoremVerdict {
    check(t, f, tol, TheoremId::HarmonicValuation, true)
}

/// As [`check_valuation`] for the eigenfunction `g`, without the
/// `g(u) > g(v)` inequality, which does not hold for `g` in general.
pub fn check_valuation_g(t: &Tree, g: &[f64], tol: &Tolerances) -> TheoremVerdict {
    check(t, g, tol, TheoremId::EigenValuation, false)
}

#[derive(Default)]
struct Component {
    positive: bool,
    negative: bool,
    zero: bool,
    vertices: Vec<Vertex>,
}

fn check(t: &Tree, x: &[f64], tol: &Tolerances, theorem: TheoremId, inequality: bool) -> TheoremVerdict {
    assert_eq!(x.len(), t.n(), "vector length must match the vertex count");
    let pattern = SignPattern::of(x, tol.sign_band);
    let mut verdict = TheoremVerdict::new(theorem);

    for v in (0..t.n()).filter(|&v| t.degree(v) >= 2) {
        let components: Vec<Component> = branches_at(t, v)
            .branches
            .into_iter()
            .map(|b| {
                let mut c = Component::default();
                for &u in &b.vertices {
                    match pattern.get(u) {
                        Sign::Positive => c.positive = true,
                        Sign::Negative => c.negative = true,
                        Sign::Zero => c.zero = true,
                    }
                }
                c.vertices = b.vertices;
                c
            })
            .collect();

        match pattern.get(v) {
            sign @ (Sign::Positive | Sign::Negative) => {
                // Work with s·x so the vertex is positive.
                let s = if sign == Sign::Positive { 1.0 } else { -1.0 };
                let opposite = |c: &Component| if s > 0.0 { c.negative } else { c.positive };
                let reaching: Vec<usize> = (0..components.len())
                    .filter(|&i| opposite(&components[i]))
                    .collect();
                if reaching.len() != 1 {
                    return verdict.fail(format!(
                        "vertex {v} has value of sign {sign:?} but {} components carry the opposite sign",
                        reaching.len()
                    ));
                }
                if inequality {
                    for (i, c) in components.iter().enumerate() {
                        if i == reaching[0] {
                            continue;
                        }
                        if let Some(&u) = c.vertices.iter().find(|&&u| s * x[u] <= s * x[v]) {
                            return verdict.fail(format!(
                                "vertex {u} beyond cut vertex {v} does not exceed it in magnitude ({} vs {})",
                                x[u], x[v]
                            ));
                        }
                    }
                }
                let clause = if s > 0.0 {
                    Clause::PositiveCutVertex
                } else {
                    Clause::NegativeCutVertex
                };
                verdict.note(Site::Vertex(v), clause);
            }
            Sign::Zero => {
                let mixed: Vec<usize> = (0..components.len())
                    .filter(|&i| components[i].positive && components[i].negative)
                    .collect();
                match mixed.len() {
                    0 => {
                        let pure = components
                            .iter()
                            .all(|c| [c.positive, c.negative, c.zero].iter().filter(|&&b| b).count() == 1);
                        if !pure {
                            return verdict.fail(format!(
                                "zero cut vertex {v} has a component mixing zero and nonzero values"
                            ));
                        }
                        verdict.note(Site::Vertex(v), Clause::ZeroPureComponents);
                    }
                    1 => {
                        let rest_zero = components
                            .iter()
                            .enumerate()
                            .all(|(i, c)| i == mixed[0] || !(c.positive || c.negative));
                        if !rest_zero {
                            return verdict.fail(format!(
                                "zero cut vertex {v} has a mixed component and another nonzero one"
                            ));
                        }
                        verdict.note(Site::Vertex(v), Clause::ZeroWithMixedComponent);
                    }
                    k => {
                        return verdict.fail(format!("zero cut vertex {v} has {k} mixed components"));
                    }
                }
            }
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::lambda1;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn p3_center_is_case_three() {
        let t = Tree::path(3).unwrap();
        let f = [1.0, 0.0, -1.0];
        for verdict in [check_valuation(&t, &f, &tol()), check_valuation_g(&t, &f, &tol())] {
            assert!(verdict.pass);
            assert_eq!(verdict.diagnostics.len(), 1);
            assert_eq!(verdict.diagnostics[0].clause, Clause::ZeroPureComponents);
            assert_eq!(verdict.diagnostics[0].site, Site::Vertex(1));
        }
    }

    #[test]
    fn p4_second_vertex_uses_negation() {
        let t = Tree::path(4).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        // Orient so vertex 2 (id 1) is negative.
        let f: Vec<f64> = if r.f[1] < 0.0 {
            r.f.clone()
        } else {
            r.f.iter().map(|x| -x).collect()
        };
        let v = check_valuation(&t, &f, &tol());
        assert!(v.pass, "{v}");
        let at_1 = v.diagnostics.iter().find(|d| d.site == Site::Vertex(1)).unwrap();
        assert_eq!(at_1.clause, Clause::NegativeCutVertex);
        assert!(f[0] < f[1]);
        let g: Vec<f64> = if r.g[1] < 0.0 {
            r.g.clone()
        } else {
            r.g.iter().map(|x| -x).collect()
        };
        assert!(check_valuation_g(&t, &g, &tol()).pass);
    }

    #[test]
    fn star_center_is_case_three() {
        let t = Tree::star(3).unwrap();
        let r = lambda1(&t, &tol()).unwrap();
        let signs = SignPattern::of(&r.f, 1e-9);
        assert_eq!(signs.get(0), Sign::Zero);
        let v = check_valuation(&t, &r.f, &tol());
        assert!(v.pass);
        assert_eq!(v.diagnostics[0].clause, Clause::ZeroPureComponents);
        assert!(check_valuation_g(&t, &r.g, &tol()).pass);
    }

    #[test]
    fn detects_violations() {
        let t = Tree::path(4).unwrap();
        // Two negative components around a positive cut vertex.
        assert!(!check_valuation(&t, &[-1.0, 1.0, -1.0, -2.0], &tol()).pass);
        // Inequality broken: f(0) = 0.5 < f(1) = 1 on the far side.
        let bad = [0.5, 1.0, -1.0, -2.0];
        assert!(!check_valuation(&t, &bad, &tol()).pass);
        assert!(check_valuation_g(&t, &bad, &tol()).pass);
        // Zero cut vertex with a component mixing zero and positive values.
        let t5 = Tree::path(5).unwrap();
        assert!(!check_valuation(&t5, &[1.0, 0.0, 0.0, 0.0, -1.0], &tol()).pass);
    }
}

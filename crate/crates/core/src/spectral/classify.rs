use serde::{Deserialize, Serialize};

use super::{bottleneck_formula_rooted, BottleneckMatrix, SpectralError};
use crate::graph::{branches_at, BranchSet, RootedTree, Tree, Vertex};
use crate::linalg::{perron, Perron};
use crate::Tolerances;

/// Bottleneck spectral radii of every branch at one vertex.
#[derive(Debug, Clone)]
pub struct PerronBranches {
    pub vertex: Vertex,
    pub branches: BranchSet,
    pub bottlenecks: Vec<BottleneckMatrix>,
    pub perron: Vec<Perron>,
    /// Indices of branches with `ρ ≥ (1 − perron_tie)·max ρ`, ascending.
    pub perron_set: Vec<usize>,
}

impl PerronBranches {
    pub fn radii(&self) -> Vec<f64> {
        self.perron.iter().map(|p| p.value).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.perron.iter().map(|p| p.value).fold(0.0, f64::max)
    }

    /// The Perron branch index when it is unique.
    pub fn unique(&self) -> Option<usize> {
        match self.perron_set.as_slice() {
            &[only] => Some(only),
            _ => None,
        }
    }

    /// Where the walk goes next: the anchor of the unique Perron branch.
    pub fn direction(&self) -> Option<Vertex> {
        self.unique().map(|b| self.branches.branches[b].anchor)
    }

    pub fn site(&self) -> SiteRadii {
        SiteRadii {
            vertex: self.vertex,
            anchors: self.branches.branches.iter().map(|b| b.anchor).collect(),
            radii: self.radii(),
        }
    }
}

/// Computes `ρ` of each branch bottleneck at `v` and the Perron set.
pub fn perron_branches_at(t: &Tree, v: Vertex, tol: &Tolerances) -> Result<PerronBranches, SpectralError> {
    t.check_vertex(v)?;
    let branches = branches_at(t, v);
    let rooted = RootedTree::new(t, v);
    let bottlenecks: Vec<BottleneckMatrix> = branches
        .branches
        .iter()
        .map(|b| bottleneck_formula_rooted(t, &rooted, b))
        .collect();
    let perron = bottlenecks
        .iter()
        .map(|b| perron(&b.matrix, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let top = perron.iter().map(|p| p.value).fold(0.0, f64::max);
    let floor = (1.0 - tol.perron_tie) * top;
    let perron_set = perron
        .iter()
        .enumerate()
        .filter(|(_, p)| p.value >= floor)
        .map(|(i, _)| i)
        .collect();
    Ok(PerronBranches {
        vertex: v,
        branches,
        bottlenecks,
        perron,
        perron_set,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeKind {
    #[serde(rename = "Type1")]
    Type1,
    #[serde(rename = "Type2")]
    Type2,
}

/// Characteristic vertex (Type 1) or characteristic edge `(i, j)` with
/// `i < j` (Type 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Characteristic {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

impl Characteristic {
    pub fn edge(a: Vertex, b: Vertex) -> Self {
        Characteristic::Edge(a.min(b), a.max(b))
    }

    pub fn kind(&self) -> TreeKind {
        match self {
            Characteristic::Vertex(_) => TreeKind::Type1,
            Characteristic::Edge(..) => TreeKind::Type2,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            Characteristic::Vertex(v) => vec![v],
            Characteristic::Edge(i, j) => vec![i, j],
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices().contains(&v)
    }
}

/// Branch radii at one vertex, branches listed by anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteRadii {
    pub vertex: Vertex,
    pub anchors: Vec<Vertex>,
    pub radii: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub kind: TreeKind,
    pub characteristic: Characteristic,
    /// Branch radii at each characteristic vertex.
    pub perron_values: Vec<SiteRadii>,
    /// Vertices visited by the walk, in order. Empty for the exhaustive scan.
    pub walk_trace: Vec<Vertex>,
}

impl Classification {
    pub(crate) fn new(
        characteristic: Characteristic,
        sites: Vec<SiteRadii>,
        walk_trace: Vec<Vertex>,
    ) -> Self {
        Self {
            kind: characteristic.kind(),
            characteristic,
            perron_values: sites,
            walk_trace,
        }
    }
}

/// Classifies `t` by walking toward Perron branches.
///
/// From vertex 0, step to the anchor of the unique Perron branch until a
/// vertex with two or more Perron branches is found (Type 1) or the walk
/// steps straight back over the edge it just crossed (Type 2). Since the
/// unique Perron branch at a non-characteristic vertex always contains the
/// characteristic site, the walk never revisits a vertex otherwise and ends
/// within `n` steps.
pub fn classify(t: &Tree, tol: &Tolerances) -> Result<Classification, SpectralError> {
    let mut trace = vec![0];
    let mut previous: Option<PerronBranches> = None;
    let mut current = 0;
    for _ in 0..=t.n() {
        let here = perron_branches_at(t, current, tol)?;
        let Some(next) = here.direction() else {
            return Ok(Classification::new(
                Characteristic::Vertex(current),
                vec![here.site()],
                trace,
            ));
        };
        if let Some(prev) = previous.as_ref().filter(|p| p.vertex == next) {
            let (a, b) = if prev.vertex < current {
                (prev.site(), here.site())
            } else {
                (here.site(), prev.site())
            };
            return Ok(Classification::new(
                Characteristic::edge(next, current),
                vec![a, b],
                trace,
            ));
        }
        trace.push(next);
        previous = Some(here);
        current = next;
    }
    Err(SpectralError::WalkDidNotTerminate(t.n()))
}

/// Perron branch data at every vertex, in vertex order.
pub fn scan_all_vertices(t: &Tree, tol: &Tolerances) -> Result<Vec<PerronBranches>, SpectralError> {
    (0..t.n()).map(|v| perron_branches_at(t, v, tol)).collect()
}

/// Classification by inspecting every vertex: Type 1 iff exactly one vertex
/// has at least two Perron branches; Type 2 iff every vertex has a unique
/// Perron branch, in which case the characteristic edge is the one edge
/// whose endpoints point at each other.
pub fn classify_exhaustive(t: &Tree, tol: &Tolerances) -> Result<Classification, SpectralError> {
    let scan = scan_all_vertices(t, tol)?;
    classify_from_scan(&scan)
}

pub fn classify_from_scan(scan: &[PerronBranches]) -> Result<Classification, SpectralError> {
    let tied: Vec<Vertex> = scan
        .iter()
        .filter(|s| s.perron_set.len() >= 2)
        .map(|s| s.vertex)
        .collect();
    match tied.as_slice() {
        &[v] => {
            return Ok(Classification::new(
                Characteristic::Vertex(v),
                vec![scan[v].site()],
                Vec::new(),
            ))
        }
        [] => {}
        _ => return Err(SpectralError::TieAmbiguity(tied)),
    }
    let mutual: Vec<(Vertex, Vertex)> = scan
        .iter()
        .filter_map(|s| {
            let to = s.direction()?;
            (to > s.vertex && scan[to].direction() == Some(s.vertex)).then_some((s.vertex, to))
        })
        .collect();
    match mutual.as_slice() {
        &[(i, j)] => Ok(Classification::new(
            Characteristic::Edge(i, j),
            vec![scan[i].site(), scan[j].site()],
            Vec::new(),
        )),
        other => Err(SpectralError::NoCharacteristicEdge(other.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn perron_sets() {
        let p3 = Tree::path(3).unwrap();
        let pb = perron_branches_at(&p3, 1, &tol()).unwrap();
        assert_eq!(pb.radii(), vec![1.0, 1.0]);
        assert_eq!(pb.perron_set, vec![0, 1]);

        let p4 = Tree::path(4).unwrap();
        let pb = perron_branches_at(&p4, 2, &tol()).unwrap();
        let r = pb.radii();
        assert!((r[0] - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(r[1], 1.0);
        assert_eq!(pb.perron_set, vec![0]);
        assert_eq!(pb.direction(), Some(1));

        let star = Tree::star(3).unwrap();
        let pb = perron_branches_at(&star, 0, &tol()).unwrap();
        assert_eq!(pb.radii(), vec![1.0; 3]);
        assert_eq!(pb.perron_set, vec![0, 1, 2]);
    }

    #[test]
    fn classify_small_trees() {
        let c = classify(&Tree::path(3).unwrap(), &tol()).unwrap();
        assert_eq!(c.kind, TreeKind::Type1);
        assert_eq!(c.characteristic, Characteristic::Vertex(1));
        assert_eq!(c.walk_trace, vec![0, 1]);

        let c = classify(&Tree::path(4).unwrap(), &tol()).unwrap();
        assert_eq!(c.kind, TreeKind::Type2);
        assert_eq!(c.characteristic, Characteristic::Edge(1, 2));
        assert_eq!(c.walk_trace, vec![0, 1, 2]);
        assert_eq!(c.perron_values[0].vertex, 1);
        assert_eq!(c.perron_values[1].vertex, 2);

        let c = classify(&Tree::path(2).unwrap(), &tol()).unwrap();
        assert_eq!(c.characteristic, Characteristic::Edge(0, 1));
    }

    #[test]
    fn walk_agrees_with_scan() {
        for seed in 0..40 {
            let t = crate::graph::random_tree(2 + seed as usize % 30, seed).unwrap();
            let walk = classify(&t, &tol()).unwrap();
            let scan = classify_exhaustive(&t, &tol()).unwrap();
            assert_eq!(walk.characteristic, scan.characteristic, "seed {seed}");
            assert_eq!(walk.perron_values, scan.perron_values);
        }
    }

    #[test]
    fn ambiguity_is_reported() {
        // An absurd tie band makes every vertex with two branches look tied.
        let loose = Tolerances {
            perron_tie: 0.99,
            ..tol()
        };
        let t = Tree::path(6).unwrap();
        assert!(matches!(
            classify_exhaustive(&t, &loose),
            Err(SpectralError::TieAmbiguity(_))
        ));
    }
}

//! Symmetric coning and a catalog of small symmetric frameworks.

use std::collections::BTreeMap;

use nalgebra::DVector;
use thiserror::Error;

use crate::framework::{
    self, Action, Graph, GraphError, PlacementError, SymmetricFramework, ValidationError, Violation,
};
use crate::linalg::Tolerance;
use crate::symmetry::{build_group, PointGroup, SchoenfliesKind, SchoenfliesSpec, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("{name} takes {expected} parameters, got {found}")]
    WrongParamCount { name: String, expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Placement(#[from] PlacementError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("{0}")]
    Action(String),
}

impl From<Violation> for ConstructionError {
    fn from(v: Violation) -> Self {
        ConstructionError::Action(v.to_string())
    }
}

/// Everything needed to build a catalog framework, with 1-based vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Blueprint {
    pub name: String,
    pub dim: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub group: SchoenfliesKind,
    /// Vertex images of each group generator, 1-based.
    pub generator_perms: Vec<Vec<usize>>,
    /// One position per vertex orbit, keyed by a 1-based vertex.
    pub placements: BTreeMap<usize, Vec<f64>>,
}

impl Blueprint {
    pub fn point_group(&self) -> Result<PointGroup, ConstructionError> {
        Ok(build_group(SchoenfliesSpec {
            kind: self.group,
            dim: self.dim,
        })?)
    }

    pub fn action(&self, group: &PointGroup) -> Result<Action, ConstructionError> {
        let perms: Vec<Vec<usize>> = self
            .generator_perms
            .iter()
            .map(|p| p.iter().map(|v| v - 1).collect())
            .collect();
        Ok(Action::from_generators(group, self.vertices, &perms)?)
    }

    pub fn graph(&self) -> Result<Graph, ConstructionError> {
        Ok(Graph::from_one_based(self.vertices, &self.edges)?)
    }

    pub fn build(&self, tol: Tolerance) -> Result<SymmetricFramework, ConstructionError> {
        let group = self.point_group()?;
        let action = self.action(&group)?;
        let placed: BTreeMap<usize, DVector<f64>> = self
            .placements
            .iter()
            .map(|(&v, p)| (v - 1, DVector::from_vec(p.clone())))
            .collect();
        let config = framework::complete_configuration(&group, &action, &placed, &tol)?;
        Ok(SymmetricFramework::validate(self.graph()?, config, group, action, tol)?)
    }

    /// Builds at a symmetry-generic configuration drawn from `seed`.
    pub fn build_sampled(&self, seed: u64, scale: f64, tol: Tolerance) -> Result<SymmetricFramework, ConstructionError> {
        let group = self.point_group()?;
        let action = self.action(&group)?;
        let config = framework::sample_symmetry_generic(&group, &action, seed, scale, &tol)?;
        Ok(SymmetricFramework::validate(self.graph()?, config, group, action, tol)?)
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [(&'static str, f64)],
    blueprint: fn(&[f64]) -> Blueprint,
}

impl CatalogEntry {
    pub fn defaults(&self) -> Vec<f64> {
        self.params.iter().map(|p| p.1).collect()
    }

    pub fn blueprint(&self, params: Option<&[f64]>) -> Result<Blueprint, ConstructionError> {
        let values = match params {
            Some(p) if p.len() != self.params.len() => {
                return Err(ConstructionError::WrongParamCount {
                    name: self.name.to_string(),
                    expected: self.params.len(),
                    found: p.len(),
                })
            }
            Some(p) => p.to_vec(),
            None => self.defaults(),
        };
        Ok((self.blueprint)(&values))
    }
}

fn perm(one_based: &[usize]) -> Vec<usize> {
    one_based.to_vec()
}

fn bipartite(left: std::ops::RangeInclusive<usize>, right: std::ops::RangeInclusive<usize>) -> Vec<(usize, usize)> {
    left.flat_map(|i| right.clone().map(move |j| (i, j))).collect()
}

fn quadrilateral() -> Vec<(usize, usize)> {
    vec![(1, 2), (1, 4), (2, 3), (3, 4)]
}

fn octahedron() -> Vec<(usize, usize)> {
    vec![
        (1, 2), (2, 3), (3, 4), (1, 4),
        (1, 5), (2, 5), (3, 5), (4, 5),
        (1, 6), (2, 6), (3, 6), (4, 6),
    ]
}

fn cube() -> Vec<(usize, usize)> {
    vec![
        (1, 2), (2, 3), (3, 4), (1, 4),
        (5, 6), (6, 7), (7, 8), (5, 8),
        (1, 5), (2, 6), (3, 7), (4, 8),
    ]
}

fn place(entries: &[(usize, &[f64])]) -> BTreeMap<usize, Vec<f64>> {
    entries.iter().map(|(v, p)| (*v, p.to_vec())).collect()
}

fn blueprint(
    name: &str,
    dim: usize,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    group: SchoenfliesKind,
    generator_perms: Vec<Vec<usize>>,
    placements: BTreeMap<usize, Vec<f64>>,
) -> Blueprint {
    Blueprint {
        name: name.to_string(),
        dim,
        vertices,
        edges,
        group,
        generator_perms,
        placements,
    }
}

const ABCD: &[(&str, f64)] = &[("a", 1.0), ("b", 2.0), ("c", 3.0), ("d", 4.0)];

pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "k22-c2",
        summary: "K_{2,2} in the plane with a half-turn swapping opposite joints",
        params: ABCD,
        blueprint: |p| {
            blueprint(
                "k22-c2",
                2,
                4,
                quadrilateral(),
                SchoenfliesKind::Cyclic(2),
                vec![perm(&[3, 4, 1, 2])],
                place(&[(1, &[p[0], p[1]]), (2, &[p[2], p[3]])]),
            )
        },
    },
    CatalogEntry {
        name: "k22-cs-a",
        summary: "K_{2,2} in the plane, mirror swapping joints 1 and 3, joints 2 and 4 on the mirror",
        params: ABCD,
        blueprint: |p| {
            blueprint(
                "k22-cs-a",
                2,
                4,
                quadrilateral(),
                SchoenfliesKind::Cs,
                vec![perm(&[3, 2, 1, 4])],
                place(&[(1, &[p[0], p[1]]), (2, &[0.0, p[2]]), (4, &[0.0, p[3]])]),
            )
        },
    },
    CatalogEntry {
        name: "k22-cs-b",
        summary: "K_{2,2} in the plane, mirror swapping 1 with 4 and 2 with 3",
        params: ABCD,
        blueprint: |p| {
            blueprint(
                "k22-cs-b",
                2,
                4,
                quadrilateral(),
                SchoenfliesKind::Cs,
                vec![perm(&[4, 3, 2, 1])],
                place(&[(1, &[p[0], p[1]]), (2, &[p[2], p[3]])]),
            )
        },
    },
    CatalogEntry {
        name: "k44-c2v-phi",
        summary: "K_{4,4} in the plane with dihedral symmetry, no joint fixed (Bottema's mechanism)",
        params: ABCD,
        blueprint: |p| {
            blueprint(
                "k44-c2v-phi",
                2,
                8,
                bipartite(1..=4, 5..=8),
                SchoenfliesKind::Cmv(2),
                vec![perm(&[3, 4, 1, 2, 7, 8, 5, 6]), perm(&[4, 3, 2, 1, 8, 7, 6, 5])],
                place(&[(1, &[p[0], p[1]]), (5, &[p[2], p[3]])]),
            )
        },
    },
    CatalogEntry {
        name: "k44-c2v-psi",
        summary: "K_{4,4} in the plane with dihedral symmetry, joints on the two mirror lines",
        params: ABCD,
        blueprint: |p| {
            blueprint(
                "k44-c2v-psi",
                2,
                8,
                bipartite(1..=4, 5..=8),
                SchoenfliesKind::Cmv(2),
                vec![perm(&[4, 3, 2, 1, 8, 7, 6, 5]), perm(&[1, 2, 3, 4, 8, 7, 6, 5])],
                place(&[
                    (1, &[p[0], 0.0]),
                    (2, &[p[1], 0.0]),
                    (5, &[0.0, p[2]]),
                    (6, &[0.0, p[3]]),
                ]),
            )
        },
    },
    CatalogEntry {
        name: "k66-c3h",
        summary: "K_{6,6} in space with a 3-fold axis and a perpendicular mirror",
        params: &[("a", 2.0), ("b", 1.0), ("d", 3.0)],
        blueprint: |p| {
            blueprint(
                "k66-c3h",
                3,
                12,
                bipartite(1..=6, 7..=12),
                SchoenfliesKind::Cmh(3),
                vec![
                    perm(&[2, 3, 1, 5, 6, 4, 8, 9, 7, 11, 12, 10]),
                    perm(&[4, 5, 6, 1, 2, 3, 10, 11, 12, 7, 8, 9]),
                ],
                place(&[(1, &[3f64.sqrt(), 0.0, 1.0]), (7, &[p[0], p[1], p[2]])]),
            )
        },
    },
    CatalogEntry {
        name: "octahedron-c2",
        summary: "octahedron in space with a half-turn fixing no joint and no bar",
        params: &[
            ("x1", 3.0), ("y1", 1.0), ("z1", 0.0),
            ("x2", -1.0), ("y2", 2.0), ("z2", 1.0),
            ("x5", 1.0), ("y5", 1.0), ("z5", 3.0),
        ],
        blueprint: |p| {
            blueprint(
                "octahedron-c2",
                3,
                6,
                octahedron(),
                SchoenfliesKind::Cyclic(2),
                vec![perm(&[3, 4, 1, 2, 6, 5])],
                place(&[(1, &p[0..3]), (2, &p[3..6]), (5, &p[6..9])]),
            )
        },
    },
    CatalogEntry {
        name: "octahedron-cs",
        summary: "octahedron in space with a mirror containing joints 2 and 4",
        params: &[
            ("x1", 2.0), ("y1", 1.0), ("z1", 0.0),
            ("y2", -2.0), ("z2", 1.0),
            ("y4", 3.0), ("z4", -1.0),
            ("x5", 1.0), ("y5", 1.0), ("z5", 2.0),
        ],
        blueprint: |p| {
            blueprint(
                "octahedron-cs",
                3,
                6,
                octahedron(),
                SchoenfliesKind::Cs,
                vec![perm(&[3, 2, 1, 4, 6, 5])],
                place(&[
                    (1, &p[0..3]),
                    (2, &[0.0, p[3], p[4]]),
                    (4, &[0.0, p[5], p[6]]),
                    (5, &p[7..10]),
                ]),
            )
        },
    },
    CatalogEntry {
        name: "crosspolytope4d-c2v",
        summary: "4-dimensional cross-polytope with a half-turn and a mirror, two joints on each mirror",
        params: &[
            ("x1", 1.0), ("z1", 2.0), ("w1", -1.0),
            ("x2", 2.0), ("z2", -1.0), ("w2", 1.0),
            ("y5", 1.0), ("z5", 1.0), ("w5", 2.0),
            ("y6", -2.0), ("z6", 1.0), ("w6", -3.0),
        ],
        blueprint: |p| {
            let skip = [(1, 3), (2, 4), (5, 7), (6, 8)];
            let edges = (1..=8)
                .flat_map(|i| (i + 1..=8).map(move |j| (i, j)))
                .filter(|e| !skip.contains(e))
                .collect();
            blueprint(
                "crosspolytope4d-c2v",
                4,
                8,
                edges,
                SchoenfliesKind::Cmv(2),
                vec![perm(&[3, 4, 1, 2, 7, 8, 5, 6]), perm(&[1, 2, 3, 4, 7, 8, 5, 6])],
                place(&[
                    (1, &[p[0], 0.0, p[1], p[2]]),
                    (2, &[p[3], 0.0, p[4], p[5]]),
                    (5, &[0.0, p[6], p[7], p[8]]),
                    (6, &[0.0, p[9], p[10], p[11]]),
                ]),
            )
        },
    },
    CatalogEntry {
        name: "cube-c2",
        summary: "planar cube graph (two nested quadrilaterals joined by spokes) with a half-turn",
        params: &[
            ("x1", 4.0), ("y1", 1.0),
            ("x2", -1.0), ("y2", 3.0),
            ("x5", 2.0), ("y5", 1.0),
            ("x6", -1.0), ("y6", 2.0),
        ],
        blueprint: |p| {
            blueprint(
                "cube-c2",
                2,
                8,
                cube(),
                SchoenfliesKind::Cyclic(2),
                vec![perm(&[3, 4, 1, 2, 7, 8, 5, 6])],
                place(&[(1, &p[0..2]), (2, &p[2..4]), (5, &p[4..6]), (6, &p[6..8])]),
            )
        },
    },
    CatalogEntry {
        name: "cube-c2v",
        summary: "planar cube graph with joints on both mirror lines of a dihedral group",
        params: &[("a", 4.0), ("b", 3.0), ("c", 1.0), ("d", 2.0)],
        blueprint: |p| {
            blueprint(
                "cube-c2v",
                2,
                8,
                cube(),
                SchoenfliesKind::Cmv(2),
                vec![perm(&[3, 4, 1, 2, 7, 8, 5, 6]), perm(&[1, 4, 3, 2, 5, 8, 7, 6])],
                place(&[
                    (1, &[p[0], 0.0]),
                    (2, &[0.0, p[1]]),
                    (5, &[p[2], 0.0]),
                    (6, &[0.0, p[3]]),
                ]),
            )
        },
    },
    CatalogEntry {
        name: "cube-c4v",
        summary: "planar cube graph with square symmetry: two nested squares joined by spokes",
        params: &[("a", 2.0), ("c", 1.0)],
        blueprint: |p| {
            blueprint(
                "cube-c4v",
                2,
                8,
                cube(),
                SchoenfliesKind::Cmv(4),
                vec![perm(&[2, 3, 4, 1, 6, 7, 8, 5]), perm(&[1, 4, 3, 2, 5, 8, 7, 6])],
                place(&[(1, &[p[0], 0.0]), (5, &[p[1], 0.0])]),
            )
        },
    },
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, ConstructionError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ConstructionError::UnknownEntry(name.to_string()))
}

/// Builds a catalog framework. With a seed the joints are resampled
/// symmetry-generically (coordinates in `[-1, 1]`); otherwise the entry's
/// parameters (or its defaults) are used.
pub fn catalog(name: &str, params: Option<&[f64]>, seed: Option<u64>) -> Result<SymmetricFramework, ConstructionError> {
    let bp = catalog_entry(name)?.blueprint(params)?;
    match seed {
        Some(s) => bp.build_sampled(s, 1.0, Tolerance::default()),
        None => bp.build(Tolerance::default()),
    }
}

/// Embeds the framework in one more dimension and adds an apex at height
/// `apex_height` on the new axis, joined to every joint and fixed by the
/// whole group.
pub fn cone(fw: &SymmetricFramework, apex_height: f64) -> Result<SymmetricFramework, ConstructionError> {
    let n = fw.graph().vertex_count();
    let mut edges = fw.graph().edges().to_vec();
    edges.extend((0..n).map(|i| (i, n)));
    let graph = Graph::new(n + 1, &edges)?;
    let d = fw.dim();
    let mut apex = DVector::zeros(d + 1);
    apex[d] = apex_height;
    let config = fw.config().lifted().with_point(apex);
    let group = fw.group().extended();
    let action = fw.action().with_fixed_vertex();
    Ok(SymmetricFramework::validate(graph, config, group, action, *fw.tol())?)
}

//! Graphs, configurations, group actions and validated symmetric frameworks.
//!
//! Vertices are 0-based internally and 1-based in every message and in the
//! document format.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{self, SubspaceBasis, Tolerance};
use crate::symmetry::{self, PointGroup, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {{{0},{0}}} is a loop")]
    Loop(usize),
    #[error("edge {{{0},{1}}} appears twice")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a graph from 0-based edges; each edge is stored as `(min, max)`
    /// in the order given.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut stored = Vec::with_capacity(edges.len());
        let mut index = HashMap::new();
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v + 1, n });
                }
            }
            if i == j {
                return Err(GraphError::Loop(i + 1));
            }
            let e = (i.min(j), i.max(j));
            if index.insert(e, stored.len()).is_some() {
                return Err(GraphError::DuplicateEdge(e.0 + 1, e.1 + 1));
            }
            stored.push(e);
        }
        Ok(Graph {
            n,
            edges: stored,
            index,
        })
    }

    /// Same as [`Graph::new`] with 1-based endpoints.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            zero.push((i - 1, j - 1));
        }
        Self::new(n, &zero)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::new(n, &edges).expect("complete graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> (usize, usize) {
        self.edges[k]
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigurationError {
    #[error("point {vertex} has {found} coordinates, expected {dim}")]
    WrongDimension { vertex: usize, dim: usize, found: usize },
    #[error("point {vertex} has a non-finite coordinate")]
    NonFinite { vertex: usize },
}

/// Positions of the joints in ℝ^d.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    points: Vec<DVector<f64>>,
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<DVector<f64>>) -> Result<Self, ConfigurationError> {
        for (v, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(ConfigurationError::WrongDimension {
                    vertex: v + 1,
                    dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(ConfigurationError::NonFinite { vertex: v + 1 });
            }
        }
        Ok(Configuration { dim, points })
    }

    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self, ConfigurationError> {
        Self::new(dim, rows.iter().map(|r| DVector::from_vec(r.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &DVector<f64> {
        &self.points[i]
    }

    /// Largest distance of a joint from the origin.
    pub fn scale(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    /// Smallest distance between two distinct joints, with the pair attaining it.
    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let d = (&self.points[i] - &self.points[j]).norm();
                if best.is_none_or(|b| d < b.2) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }

    /// Whether the joints affinely span ℝ^d.
    pub fn affinely_spans(&self, tol: &Tolerance) -> bool {
        if self.points.len() < self.dim + 1 {
            return false;
        }
        let base = &self.points[0];
        let cols: Vec<DVector<f64>> = self.points[1..].iter().map(|p| p - base).collect();
        let m = DMatrix::from_columns(&cols);
        linalg::rank(&m, tol).map(|r| r == self.dim).unwrap_or(false)
    }

    /// Embeds every point into ℝ^{d+1} with a trailing zero.
    pub fn lifted(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.clone().insert_row(self.dim, 0.0))
            .collect();
        Configuration {
            dim: self.dim + 1,
            points,
        }
    }

    pub fn with_point(mut self, p: DVector<f64>) -> Self {
        self.points.push(p);
        self
    }
}

/// A permutation action Φ of a point group on the vertices: one permutation
/// per group element, `perms[x][i] = Φ(x)(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    perms: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

impl Action {
    /// Extends generator images (0-based permutations, one per group
    /// generator) to the whole group along the group's generator words.
    pub fn from_generators(
        group: &PointGroup,
        n: usize,
        gen_perms: &[Vec<usize>],
    ) -> Result<Self, Violation> {
        if gen_perms.len() != group.generator_count() {
            return Err(Violation::GeneratorCount {
                expected: group.generator_count(),
                found: gen_perms.len(),
            });
        }
        for (k, p) in gen_perms.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(Violation::NotAPermutation {
                    element: format!("generator {}", k + 1),
                });
            }
        }
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(group.order());
        perms.push((0..n).collect());
        for k in 1..group.order() {
            let (slot, parent) = group.parent(k).expect("non-identity element has a parent");
            perms.push(compose(&gen_perms[slot], &perms[parent]));
        }
        Ok(Action { perms })
    }

    /// One permutation per group element, in the group's element order.
    pub fn from_element_perms(group: &PointGroup, n: usize, perms: Vec<Vec<usize>>) -> Result<Self, Violation> {
        if perms.len() != group.order() {
            return Err(Violation::GeneratorCount {
                expected: group.order(),
                found: perms.len(),
            });
        }
        for (k, p) in perms.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(Violation::NotAPermutation {
                    element: group.element(k).label.clone(),
                });
            }
        }
        Ok(Action { perms })
    }

    /// The action in which every element fixes every vertex.
    pub fn trivial(group: &PointGroup, n: usize) -> Self {
        Action {
            perms: vec![(0..n).collect(); group.order()],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.perms.first().map(|p| p.len()).unwrap_or(0)
    }

    /// Φ(x)(i).
    pub fn apply(&self, x: usize, i: usize) -> usize {
        self.perms[x][i]
    }

    pub fn perm(&self, x: usize) -> &[usize] {
        &self.perms[x]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Image of an edge (as a vertex pair) under Φ(x).
    pub fn apply_edge(&self, x: usize, e: (usize, usize)) -> (usize, usize) {
        let (a, b) = (self.perms[x][e.0], self.perms[x][e.1]);
        (a.min(b), a.max(b))
    }

    /// The same action with one more vertex fixed by every element.
    pub fn with_fixed_vertex(&self) -> Self {
        let n = self.vertex_count();
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(n);
                q
            })
            .collect();
        Action { perms }
    }

    /// Checks Φ(xy) = Φ(x)∘Φ(y) over the whole multiplication table.
    pub fn homomorphism_violation(&self, group: &PointGroup) -> Option<Violation> {
        let id: Vec<usize> = (0..self.vertex_count()).collect();
        if self.perms[group.identity_index()] != id {
            return Some(Violation::Homomorphism {
                x: group.element(0).label.clone(),
                y: group.element(0).label.clone(),
            });
        }
        for x in 0..group.order() {
            for y in 0..group.order() {
                if self.perms[group.mul(x, y)] != compose(&self.perms[x], &self.perms[y]) {
                    return Some(Violation::Homomorphism {
                        x: group.element(x).label.clone(),
                        y: group.element(y).label.clone(),
                    });
                }
            }
        }
        None
    }

    /// Elements fixing vertex `v`, the identity first.
    pub fn stabilizer(&self, v: usize) -> Vec<usize> {
        (0..self.perms.len()).filter(|&x| self.perms[x][v] == v).collect()
    }
}

/// One reason a candidate symmetric framework fails validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DimensionMismatch { group: usize, configuration: usize },
    VertexCountMismatch { graph: usize, configuration: usize, action: usize },
    GeneratorCount { expected: usize, found: usize },
    NotAPermutation { element: String },
    Homomorphism { x: String, y: String },
    Automorphism { element: String, edge: (usize, usize) },
    Equivariance { element: String, vertex: usize, residual: f64 },
    NonInjective { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { group, configuration } => write!(
                f,
                "group acts on R^{group} but the configuration lives in R^{configuration}"
            ),
            Violation::VertexCountMismatch { graph, configuration, action } => write!(
                f,
                "vertex counts disagree: graph {graph}, configuration {configuration}, action {action}"
            ),
            Violation::GeneratorCount { expected, found } => {
                write!(f, "expected {expected} permutations, found {found}")
            }
            Violation::NotAPermutation { element } => {
                write!(f, "image of {element} is not a permutation of the vertices")
            }
            Violation::Homomorphism { x, y } => {
                write!(f, "action is not a homomorphism: Φ({x}·{y}) ≠ Φ({x})∘Φ({y})")
            }
            Violation::Automorphism { element, edge } => write!(
                f,
                "Φ({element}) maps edge {{{},{}}} to a non-edge",
                edge.0 + 1,
                edge.1 + 1
            ),
            Violation::Equivariance { element, vertex, residual } => write!(
                f,
                "{element} does not map joint {} onto its image (residual {residual:.3e})",
                vertex + 1
            ),
            Violation::NonInjective { i, j } => {
                write!(f, "joints {} and {} coincide", i + 1, j + 1)
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "invalid symmetric framework: {}", parts.join("; "))
    }
}

/// Absolute tolerance for position comparisons at the configuration's scale.
pub fn position_tolerance(config: &Configuration, tol: &Tolerance) -> f64 {
    tol.abs * config.scale().max(1.0)
}

/// A framework together with a point group and an action Φ satisfying
/// `X p_i = p_{Φ(x)(i)}` for every element x and joint i.
#[derive(Debug, Clone)]
pub struct SymmetricFramework {
    graph: Graph,
    config: Configuration,
    group: PointGroup,
    action: Action,
    tol: Tolerance,
}

impl SymmetricFramework {
    /// Checks every condition and reports all failures at once.
    pub fn validate(
        graph: Graph,
        config: Configuration,
        group: PointGroup,
        action: Action,
        tol: Tolerance,
    ) -> Result<Self, ValidationError> {
        let mut violations = Vec::new();
        if group.dim() != config.dim() {
            violations.push(Violation::DimensionMismatch {
                group: group.dim(),
                configuration: config.dim(),
            });
        }
        let n = graph.vertex_count();
        if config.len() != n || action.vertex_count() != n {
            violations.push(Violation::VertexCountMismatch {
                graph: n,
                configuration: config.len(),
                action: action.vertex_count(),
            });
        }
        if action.perms().len() != group.order() {
            violations.push(Violation::GeneratorCount {
                expected: group.order(),
                found: action.perms().len(),
            });
        }
        if !violations.is_empty() {
            return Err(ValidationError { violations });
        }

        if let Some(v) = action.homomorphism_violation(&group) {
            violations.push(v);
        }
        for x in 0..group.order() {
            let label = &group.element(x).label;
            if let Some(&e) = graph
                .edges()
                .iter()
                .find(|&&e| {
                    let (a, b) = action.apply_edge(x, e);
                    !graph.has_edge(a, b)
                })
            {
                violations.push(Violation::Automorphism {
                    element: label.clone(),
                    edge: e,
                });
            }
            let limit = position_tolerance(&config, &tol);
            let mut worst: Option<(usize, f64)> = None;
            for i in 0..n {
                let image = group.matrix(x) * config.point(i);
                let residual = (image - config.point(action.apply(x, i))).norm();
                if residual > limit && worst.is_none_or(|w| residual > w.1) {
                    worst = Some((i, residual));
                }
            }
            if let Some((vertex, residual)) = worst {
                violations.push(Violation::Equivariance {
                    element: label.clone(),
                    vertex,
                    residual,
                });
            }
        }
        if let Some((i, j, d)) = config.closest_pair() {
            if d <= position_tolerance(&config, &tol) {
                violations.push(Violation::NonInjective { i, j });
            }
        }
        if violations.is_empty() {
            Ok(SymmetricFramework {
                graph,
                config,
                group,
                action,
                tol,
            })
        } else {
            Err(ValidationError { violations })
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn group(&self) -> &PointGroup {
        &self.group
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    /// Same symmetric graph at another configuration.
    pub fn with_configuration(&self, config: Configuration) -> Result<Self, ValidationError> {
        Self::validate(
            self.graph.clone(),
            config,
            self.group.clone(),
            self.action.clone(),
            self.tol,
        )
    }

    /// Same joints and symmetry on another edge set.
    pub fn with_graph(&self, graph: Graph) -> Result<Self, ValidationError> {
        Self::validate(
            graph,
            self.config.clone(),
            self.group.clone(),
            self.action.clone(),
            self.tol,
        )
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    /// The complete graph on the same joints with the induced action.
    pub fn complete(&self) -> Self {
        self.with_graph(Graph::complete(self.graph.vertex_count()))
            .expect("complete graph inherits every symmetry")
    }

    pub fn fixed_counts(&self) -> FixedCounts {
        fixed_counts(&self.graph, &self.action)
    }

    pub fn orbit_structure(&self) -> Result<OrbitStructure, SymmetryError> {
        OrbitStructure::new(self)
    }
}

/// Number of joints and bars left in place by each group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCounts {
    pub joints: Vec<usize>,
    pub bars: Vec<usize>,
}

pub fn fixed_counts(graph: &Graph, action: &Action) -> FixedCounts {
    let joints = action
        .perms()
        .iter()
        .map(|p| p.iter().enumerate().filter(|&(i, &v)| i == v).count())
        .collect();
    let bars = (0..action.perms().len())
        .map(|x| {
            graph
                .edges()
                .iter()
                .filter(|&&e| action.apply_edge(x, e) == e)
                .count()
        })
        .collect();
    FixedCounts { joints, bars }
}

/// Where a vertex sits relative to its orbit representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitPosition {
    /// Lowest-index vertex of the orbit.
    pub rep: usize,
    /// Lowest-index element x with Φ(x)(rep) = vertex.
    pub witness: usize,
}

/// Vertex orbits of an action: representative and witness for every vertex.
pub fn vertex_orbits(action: &Action) -> Vec<OrbitPosition> {
    let n = action.vertex_count();
    let mut out: Vec<Option<OrbitPosition>> = vec![None; n];
    for rep in 0..n {
        if out[rep].is_some() {
            continue;
        }
        for x in 0..action.perms().len() {
            let v = action.apply(x, rep);
            if out[v].is_none() {
                out[v] = Some(OrbitPosition { rep, witness: x });
            }
        }
    }
    out.into_iter().map(|p| p.expect("every vertex lies in an orbit")).collect()
}

/// Normal form of an edge orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrbitForm {
    /// `{a, Φ(x)(b)}` with `a ≠ b` vertex representatives.
    DistinctOrbits { a: usize, b: usize, x: usize },
    /// `{a, Φ(x)(a)}`: both ends in the orbit of `a`.
    SameOrbit { a: usize, x: usize },
}

impl EdgeOrbitForm {
    pub fn first_rep(&self) -> usize {
        match *self {
            EdgeOrbitForm::DistinctOrbits { a, .. } | EdgeOrbitForm::SameOrbit { a, .. } => a,
        }
    }

    pub fn witness(&self) -> usize {
        match *self {
            EdgeOrbitForm::DistinctOrbits { x, .. } | EdgeOrbitForm::SameOrbit { x, .. } => x,
        }
    }

    /// Representative and witness of the second endpoint.
    pub fn second(&self) -> (usize, usize) {
        match *self {
            EdgeOrbitForm::DistinctOrbits { b, x, .. } => (b, x),
            EdgeOrbitForm::SameOrbit { a, x } => (a, x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeOrbit {
    pub form: EdgeOrbitForm,
    /// Edge indices in the orbit, ascending.
    pub edges: Vec<usize>,
    /// The edge `{a, Φ(x)(b)}` named by the normal form.
    pub rep_edge: usize,
}

/// Vertex and edge orbits with stabilizers and joint subspace bases.
#[derive(Debug, Clone)]
pub struct OrbitStructure {
    vertex_reps: Vec<usize>,
    orbit_of: Vec<OrbitPosition>,
    rep_slot: Vec<Option<usize>>,
    stabilizers: Vec<Vec<usize>>,
    joint_bases: Vec<SubspaceBasis>,
    offsets: Vec<usize>,
    edge_orbits: Vec<EdgeOrbit>,
    edge_orbit_of: Vec<usize>,
}

impl OrbitStructure {
    pub fn new(fw: &SymmetricFramework) -> Result<Self, SymmetryError> {
        let action = fw.action();
        let graph = fw.graph();
        let group = fw.group();
        let n = graph.vertex_count();
        let orbit_of = vertex_orbits(action);
        let vertex_reps: Vec<usize> = (0..n).filter(|&v| orbit_of[v].rep == v).collect();
        let mut rep_slot = vec![None; n];
        for (k, &r) in vertex_reps.iter().enumerate() {
            rep_slot[r] = Some(k);
        }
        let stabilizers: Vec<Vec<usize>> = vertex_reps.iter().map(|&r| action.stabilizer(r)).collect();
        let joint_bases = vertex_reps
            .iter()
            .zip(&stabilizers)
            .map(|(&r, stab)| symmetry::joint_subspace(group, stab, fw.config().point(r), r + 1, fw.tol()))
            .collect::<Result<Vec<_>, _>>()?;

        let m = graph.edge_count();
        let mut edge_orbit_of = vec![usize::MAX; m];
        let mut edge_orbits = Vec::new();
        for e0 in 0..m {
            if edge_orbit_of[e0] != usize::MAX {
                continue;
            }
            let k = edge_orbits.len();
            let mut members = Vec::new();
            for x in 0..group.order() {
                let (i, j) = action.apply_edge(x, graph.edge(e0));
                let e = graph.edge_index(i, j).expect("validated action maps edges to edges");
                if edge_orbit_of[e] == usize::MAX {
                    edge_orbit_of[e] = k;
                    members.push(e);
                }
            }
            members.sort_unstable();
            let a = members
                .iter()
                .flat_map(|&e| {
                    let (i, j) = graph.edge(e);
                    [orbit_of[i].rep, orbit_of[j].rep]
                })
                .min()
                .expect("orbit is nonempty");
            let (rep_edge, v) = members
                .iter()
                .filter_map(|&e| {
                    let (i, j) = graph.edge(e);
                    if i == a {
                        Some((e, j))
                    } else if j == a {
                        Some((e, i))
                    } else {
                        None
                    }
                })
                .min_by_key(|&(_, v)| v)
                .expect("some edge of the orbit meets its smallest representative");
            let b = orbit_of[v].rep;
            let x = orbit_of[v].witness;
            let form = if a == b {
                EdgeOrbitForm::SameOrbit { a, x }
            } else {
                EdgeOrbitForm::DistinctOrbits { a, b, x }
            };
            edge_orbits.push(EdgeOrbit {
                form,
                edges: members,
                rep_edge,
            });
        }

        let offsets = Self::offsets_of(&joint_bases);
        Ok(OrbitStructure {
            vertex_reps,
            orbit_of,
            rep_slot,
            stabilizers,
            joint_bases,
            offsets,
            edge_orbits,
            edge_orbit_of,
        })
    }

    fn offsets_of(bases: &[SubspaceBasis]) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(bases.len());
        let mut at = 0;
        for b in bases {
            offsets.push(at);
            at += b.dim();
        }
        offsets
    }

    /// Replaces the joint bases by other orthonormal bases of the same
    /// subspaces, e.g. `M_i Q_i` for orthogonal `Q_i`.
    pub fn with_joint_bases(&self, bases: Vec<SubspaceBasis>, tol: f64) -> Option<Self> {
        if bases.len() != self.joint_bases.len() {
            return None;
        }
        for (old, new) in self.joint_bases.iter().zip(&bases) {
            if old.dim() != new.dim()
                || old.ambient_dim() != new.ambient_dim()
                || new.projection_residual(old) > tol
            {
                return None;
            }
        }
        let mut out = self.clone();
        out.offsets = Self::offsets_of(&bases);
        out.joint_bases = bases;
        Some(out)
    }

    pub fn vertex_reps(&self) -> &[usize] {
        &self.vertex_reps
    }

    pub fn orbit_of(&self, v: usize) -> OrbitPosition {
        self.orbit_of[v]
    }

    /// Position of a representative in `vertex_reps`.
    pub fn rep_slot(&self, rep: usize) -> Option<usize> {
        self.rep_slot[rep]
    }

    pub fn stabilizer(&self, slot: usize) -> &[usize] {
        &self.stabilizers[slot]
    }

    pub fn joint_basis(&self, slot: usize) -> &SubspaceBasis {
        &self.joint_bases[slot]
    }

    pub fn joint_bases(&self) -> &[SubspaceBasis] {
        &self.joint_bases
    }

    /// First column of representative `slot` in the orbit matrix.
    pub fn offset(&self, slot: usize) -> usize {
        self.offsets[slot]
    }

    /// c_i for every representative.
    pub fn local_dims(&self) -> Vec<usize> {
        self.joint_bases.iter().map(|b| b.dim()).collect()
    }

    /// Total column count c.
    pub fn column_count(&self) -> usize {
        self.joint_bases.iter().map(|b| b.dim()).sum()
    }

    pub fn edge_orbits(&self) -> &[EdgeOrbit] {
        &self.edge_orbits
    }

    pub fn edge_orbit_of(&self, e: usize) -> usize {
        self.edge_orbit_of[e]
    }

    /// Size of the orbit containing vertex `v`.
    pub fn vertex_orbit_size(&self, v: usize) -> usize {
        let rep = self.orbit_of[v].rep;
        self.orbit_of.iter().filter(|p| p.rep == rep).count()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlacementError {
    #[error("no position given for the orbit of vertex {0}")]
    MissingPlacement(usize),
    #[error("vertices {0} and {1} lie in the same orbit; place only one of them")]
    DuplicatePlacement(usize, usize),
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(usize),
    #[error("position of vertex {vertex} lies outside its joint subspace (distance {distance:.3e})")]
    InconsistentPlacement { vertex: usize, distance: f64 },
    #[error("two group elements send vertex {0} to different positions")]
    Ambiguous(usize),
    #[error("could not draw an injective configuration in {0} attempts")]
    SamplingFailed(usize),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Configuration(#[from] ConfigurationError),
}

/// Places every joint from one position per vertex orbit.
///
/// `placed` maps 0-based vertices to positions; any member of an orbit may
/// stand for it.
pub fn complete_configuration(
    group: &PointGroup,
    action: &Action,
    placed: &BTreeMap<usize, DVector<f64>>,
    tol: &Tolerance,
) -> Result<Configuration, PlacementError> {
    let n = action.vertex_count();
    let orbit_of = vertex_orbits(action);
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in placed.keys() {
        if v >= n {
            return Err(PlacementError::UnknownVertex(v + 1));
        }
        if let Some(&w) = chosen.get(&orbit_of[v].rep) {
            return Err(PlacementError::DuplicatePlacement(w + 1, v + 1));
        }
        chosen.insert(orbit_of[v].rep, v);
    }
    let mut points: Vec<Option<DVector<f64>>> = vec![None; n];
    for (&rep, &v) in &chosen {
        let p = &placed[&v];
        if p.len() != group.dim() {
            return Err(ConfigurationError::WrongDimension {
                vertex: v + 1,
                dim: group.dim(),
                found: p.len(),
            }
            .into());
        }
        let limit = tol.abs * p.norm().max(1.0);
        for x in action.stabilizer(v) {
            let distance = (group.matrix(x) * p - p).norm();
            if distance > limit {
                return Err(PlacementError::InconsistentPlacement {
                    vertex: v + 1,
                    distance,
                });
            }
        }
        for x in 0..group.order() {
            let target = action.apply(x, v);
            let image = group.matrix(x) * p;
            match &points[target] {
                Some(q) if (q - &image).norm() > limit => {
                    return Err(PlacementError::Ambiguous(target + 1));
                }
                Some(_) => {}
                None => points[target] = Some(image),
            }
        }
        debug_assert_eq!(orbit_of[v].rep, rep);
    }
    let points = points
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or(PlacementError::MissingPlacement(orbit_of[v].rep + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Configuration::new(group.dim(), points)?)
}

pub const SAMPLING_ATTEMPTS: usize = 100;

/// Draws a configuration that is as generic as the symmetry allows: every
/// representative gets uniform coordinates in `[-scale, scale]` with respect
/// to the basis of its joint subspace, and the rest follows from the action.
///
/// Attempts that are injective and affinely spanning win; failing that, the
/// first injective attempt is returned.
pub fn sample_symmetry_generic(
    group: &PointGroup,
    action: &Action,
    seed: u64,
    scale: f64,
    tol: &Tolerance,
) -> Result<Configuration, PlacementError> {
    let orbit_of = vertex_orbits(action);
    let n = action.vertex_count();
    let reps: Vec<usize> = (0..n).filter(|&v| orbit_of[v].rep == v).collect();
    let bases = reps
        .iter()
        .map(|&r| symmetry::common_fixed_subspace(group, &action.stabilizer(r), tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fallback = None;
    for _ in 0..SAMPLING_ATTEMPTS {
        let mut placed = BTreeMap::new();
        for (&r, basis) in reps.iter().zip(&bases) {
            let coords = DVector::from_fn(basis.dim(), |_, _| rng.random_range(-scale..scale));
            placed.insert(r, basis.matrix() * coords);
        }
        let config = complete_configuration(group, action, &placed, tol)?;
        let injective = config
            .closest_pair()
            .is_none_or(|(_, _, d)| d > 1e-6 * scale);
        if !injective {
            continue;
        }
        if config.affinely_spans(tol) {
            return Ok(config);
        }
        if fallback.is_none() {
            fallback = Some(config);
        }
    }
    fallback.ok_or(PlacementError::SamplingFailed(SAMPLING_ATTEMPTS))
}

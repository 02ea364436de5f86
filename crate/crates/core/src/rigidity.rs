//! The ordinary rigidity matrix, trivial motions, and brute-force symmetric
//! motion and stress spaces that serve as a check on the orbit matrix.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::framework::{Configuration, Graph, SymmetricFramework};
use crate::linalg::{self, LinalgError, RealMatrix, SubspaceBasis, Tolerance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RigidityError {
    #[error("bar {{{0},{1}}} joins coincident joints")]
    DegenerateEdge(usize, usize),
    #[error("graph has {graph} vertices but the configuration has {configuration} points")]
    SizeMismatch { graph: usize, configuration: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The |E| × dn matrix whose row for bar {i,j} holds `p_i − p_j` in block i
/// and `p_j − p_i` in block j.
pub fn rigidity_matrix(graph: &Graph, config: &Configuration) -> Result<RealMatrix, RigidityError> {
    if graph.vertex_count() != config.len() {
        return Err(RigidityError::SizeMismatch {
            graph: graph.vertex_count(),
            configuration: config.len(),
        });
    }
    let d = config.dim();
    let mut r = DMatrix::zeros(graph.edge_count(), d * config.len());
    for (k, &(i, j)) in graph.edges().iter().enumerate() {
        let diff = config.point(i) - config.point(j);
        if diff.iter().all(|&v| v == 0.0) {
            return Err(RigidityError::DegenerateEdge(i + 1, j + 1));
        }
        for c in 0..d {
            r[(k, d * i + c)] = diff[c];
            r[(k, d * j + c)] = -diff[c];
        }
    }
    Ok(r)
}

/// Orthonormal basis of the infinitesimal rigid motions `u_i = S p_i + t`
/// evaluated at the configuration.
pub fn trivial_motions(config: &Configuration, tol: &Tolerance) -> Result<SubspaceBasis, RigidityError> {
    let d = config.dim();
    let n = config.len();
    let mut fields: Vec<DVector<f64>> = Vec::new();
    for a in 0..d {
        let mut u = DVector::zeros(d * n);
        for i in 0..n {
            u[d * i + a] = 1.0;
        }
        fields.push(u);
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut u = DVector::zeros(d * n);
            for i in 0..n {
                let p = config.point(i);
                u[d * i + a] = p[b];
                u[d * i + b] = -p[a];
            }
            fields.push(u);
        }
    }
    if fields.is_empty() || n == 0 {
        return Ok(SubspaceBasis::empty(d * n));
    }
    Ok(linalg::column_space(&DMatrix::from_columns(&fields), tol)?)
}

/// Whether the framework has exactly `dn − C(d+1,2)` independent bars and no
/// more. Frameworks with fewer than d+1 joints are outside the scope of this
/// test.
pub fn is_isostatic(graph: &Graph, config: &Configuration, tol: &Tolerance) -> Result<bool, RigidityError> {
    let d = config.dim();
    let n = config.len();
    if n < d + 1 {
        return Err(RigidityError::Unsupported(format!(
            "isostatic test needs at least {} joints in dimension {d}",
            d + 1
        )));
    }
    let target = d * n - d * (d + 1) / 2;
    let r = rigidity_matrix(graph, config)?;
    Ok(graph.edge_count() == target && linalg::rank(&r, tol)? == target)
}

/// Whether every infinitesimal motion is trivial.
pub fn is_infinitesimally_rigid(graph: &Graph, config: &Configuration, tol: &Tolerance) -> Result<bool, RigidityError> {
    let r = rigidity_matrix(graph, config)?;
    let kernel = config.dim() * config.len() - linalg::rank(&r, tol)?;
    Ok(kernel == trivial_motions(config, tol)?.dim())
}

/// The averaging projector onto fully symmetric velocity fields,
/// `(P u)_i = (1/|S|) Σ_x Xᵀ u_{Φ(x)(i)}`.
pub fn motion_symmetrizer(fw: &SymmetricFramework) -> RealMatrix {
    let d = fw.dim();
    let n = fw.graph().vertex_count();
    let group = fw.group();
    let w = 1.0 / group.order() as f64;
    let mut p = DMatrix::zeros(d * n, d * n);
    for x in 0..group.order() {
        let xt = group.matrix(x).transpose() * w;
        for i in 0..n {
            let j = fw.action().apply(x, i);
            let mut block = p.view_mut((d * i, d * j), (d, d));
            block += &xt;
        }
    }
    p
}

/// The averaging projector onto orbit-constant edge weights.
pub fn stress_symmetrizer(fw: &SymmetricFramework) -> RealMatrix {
    let graph = fw.graph();
    let m = graph.edge_count();
    let order = fw.group().order();
    let w = 1.0 / order as f64;
    let mut q = DMatrix::zeros(m, m);
    for x in 0..order {
        for (e, &edge) in graph.edges().iter().enumerate() {
            let (a, b) = fw.action().apply_edge(x, edge);
            let f = graph.edge_index(a, b).expect("validated action preserves edges");
            q[(e, f)] += w;
        }
    }
    q
}

fn stacked_kernel(top: &RealMatrix, symmetrizer: RealMatrix, tol: &Tolerance) -> Result<SubspaceBasis, RigidityError> {
    let n = symmetrizer.nrows();
    let shifted = symmetrizer - DMatrix::identity(n, n);
    Ok(linalg::nullspace(&linalg::vstack(&[top, &shifted])?, tol)?)
}

/// All infinitesimal motions invariant under the symmetry, trivial ones
/// included: `ker R ∩ Fix(P)`.
pub fn symmetric_motion_space(fw: &SymmetricFramework) -> Result<SubspaceBasis, RigidityError> {
    let r = rigidity_matrix(fw.graph(), fw.config())?;
    stacked_kernel(&r, motion_symmetrizer(fw), fw.tol())
}

/// All self-stresses that are constant on edge orbits: `ker Rᵀ ∩ Fix(Q)`.
pub fn symmetric_stress_space(fw: &SymmetricFramework) -> Result<SubspaceBasis, RigidityError> {
    let r = rigidity_matrix(fw.graph(), fw.config())?;
    stacked_kernel(&r.transpose(), stress_symmetrizer(fw), fw.tol())
}

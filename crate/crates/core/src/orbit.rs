//! The orbit rigidity matrix: one row per bar orbit, `c_i` columns per joint
//! orbit representative. Its kernel holds the fully symmetric infinitesimal
//! motions and its left kernel the fully symmetric self-stresses, both in
//! reduced coordinates; the lifts here expand them back to every joint and bar.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::framework::{EdgeOrbitForm, OrbitStructure, SymmetricFramework};
use crate::linalg::{self, LinalgError, RealMatrix, SubspaceBasis, Tolerance};
use crate::symmetry::SymmetryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How the two ends of a bar orbit relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowCase {
    /// Ends in different joint orbits.
    DistinctOrbits,
    /// Both ends in one joint orbit.
    SameOrbit,
    /// Both ends in one joint orbit, with `Φ(x)(a) = Φ(x⁻¹)(a)`.
    SameOrbitPalindromic,
}

impl RowCase {
    pub fn tag(&self) -> &'static str {
        match self {
            RowCase::DistinctOrbits => "distinct-orbits",
            RowCase::SameOrbit => "same-orbit",
            RowCase::SameOrbitPalindromic => "same-orbit-palindromic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowMeta {
    pub form: EdgeOrbitForm,
    pub case: RowCase,
    /// Factor relating a reduced stress entry to the stress on each bar of
    /// the orbit.
    pub alpha: usize,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnMeta {
    pub rep: usize,
    pub offset: usize,
    pub width: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitMatrix {
    pub matrix: RealMatrix,
    pub rows: Vec<RowMeta>,
    pub cols: Vec<ColumnMeta>,
}

impl OrbitMatrix {
    pub fn row_count(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn column_count(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn alphas(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.alpha).collect()
    }

    pub fn rank(&self, tol: &Tolerance) -> Result<usize, LinalgError> {
        linalg::rank(&self.matrix, tol)
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Builds the orbit rigidity matrix from the stored edge-orbit normal forms.
pub fn orbit_matrix(fw: &SymmetricFramework, os: &OrbitStructure) -> OrbitMatrix {
    let group = fw.group();
    let action = fw.action();
    let p = |v: usize| fw.config().point(v);
    let c = os.column_count();
    let orbits = os.edge_orbits();
    let mut matrix = DMatrix::zeros(orbits.len(), c);
    let mut rows = Vec::with_capacity(orbits.len());

    for (k, orbit) in orbits.iter().enumerate() {
        let form = orbit.form;
        let a = form.first_rep();
        let x = form.witness();
        let xm = group.matrix(x);
        let xinv = group.inverse(x);
        let xim = group.matrix(xinv);
        let slot_a = os.rep_slot(a).expect("normal form uses representatives");
        let stab_a = os.stabilizer(slot_a);
        let ma = os.joint_basis(slot_a).matrix();
        let (case, alpha) = match form {
            EdgeOrbitForm::DistinctOrbits { b, .. } => {
                let slot_b = os.rep_slot(b).expect("normal form uses representatives");
                let mb = os.joint_basis(slot_b).matrix();
                let block_a = (p(a) - xm * p(b)).transpose() * ma;
                let block_b = (p(b) - xim * p(a)).transpose() * mb;
                matrix
                    .view_mut((k, os.offset(slot_a)), (1, ma.ncols()))
                    .copy_from(&block_a);
                matrix
                    .view_mut((k, os.offset(slot_b)), (1, mb.ncols()))
                    .copy_from(&block_b);
                let end = action.apply(x, b);
                let alpha = intersection_size(stab_a, &action.stabilizer(end));
                (RowCase::DistinctOrbits, alpha)
            }
            EdgeOrbitForm::SameOrbit { .. } => {
                let block = (p(a) * 2.0 - xm * p(a) - xim * p(a)).transpose() * ma;
                matrix
                    .view_mut((k, os.offset(slot_a)), (1, ma.ncols()))
                    .copy_from(&block);
                let forward = action.apply(x, a);
                let backward = action.apply(xinv, a);
                let base = intersection_size(stab_a, &action.stabilizer(forward));
                let reversible = stab_a.iter().any(|&y| action.apply(y, forward) == backward);
                let case = if forward == backward {
                    RowCase::SameOrbitPalindromic
                } else {
                    RowCase::SameOrbit
                };
                (case, if reversible { 2 * base } else { base })
            }
        };
        rows.push(RowMeta {
            form,
            case,
            alpha,
            orbit_size: orbit.edges.len(),
        });
    }

    let cols = os
        .vertex_reps()
        .iter()
        .enumerate()
        .map(|(slot, &rep)| ColumnMeta {
            rep,
            offset: os.offset(slot),
            width: os.joint_basis(slot).dim(),
        })
        .collect();
    OrbitMatrix { matrix, rows, cols }
}

/// Orthonormal basis of ker O: fully symmetric infinitesimal motions in
/// reduced coordinates, trivial ones included.
pub fn reduced_motions(om: &OrbitMatrix, tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    linalg::nullspace(&om.matrix, tol)
}

/// Orthonormal basis of ker Oᵀ: fully symmetric self-stresses in reduced
/// coordinates.
pub fn reduced_stresses(om: &OrbitMatrix, tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    linalg::left_nullspace(&om.matrix, tol)
}

/// Expands a reduced motion to every joint: `u_rep = M_rep ũ_rep` and
/// `u_{Φ(x)(rep)} = X u_rep`.
pub fn lift_motion(
    fw: &SymmetricFramework,
    os: &OrbitStructure,
    reduced: &DVector<f64>,
) -> Result<DVector<f64>, OrbitError> {
    let c = os.column_count();
    if reduced.len() != c {
        return Err(OrbitError::WrongLength {
            expected: c,
            found: reduced.len(),
        });
    }
    let d = fw.dim();
    let n = fw.graph().vertex_count();
    let rep_velocity: Vec<DVector<f64>> = (0..os.vertex_reps().len())
        .map(|slot| {
            let basis = os.joint_basis(slot);
            basis.matrix() * reduced.rows(os.offset(slot), basis.dim())
        })
        .collect();
    let mut u = DVector::zeros(d * n);
    for v in 0..n {
        let pos = os.orbit_of(v);
        let slot = os.rep_slot(pos.rep).expect("orbit positions name representatives");
        let uv = fw.group().matrix(pos.witness) * &rep_velocity[slot];
        u.rows_mut(d * v, d).copy_from(&uv);
    }
    Ok(u)
}

/// Expands a reduced stress to every bar: each bar of orbit i carries
/// `α_i · ω̃_i`.
pub fn lift_stress(
    fw: &SymmetricFramework,
    os: &OrbitStructure,
    om: &OrbitMatrix,
    reduced: &DVector<f64>,
) -> Result<DVector<f64>, OrbitError> {
    let r = om.row_count();
    if reduced.len() != r {
        return Err(OrbitError::WrongLength {
            expected: r,
            found: reduced.len(),
        });
    }
    let m = fw.graph().edge_count();
    Ok(DVector::from_fn(m, |e, _| {
        let k = os.edge_orbit_of(e);
        om.rows[k].alpha as f64 * reduced[k]
    }))
}

/// Fully symmetric trivial motions, measured through the orbit matrix of the
/// complete graph on the same joints.
#[derive(Debug, Clone)]
pub struct Mobility {
    /// dim ker O(K_n).
    pub m: usize,
    /// Basis of ker O(K_n) in the same reduced coordinates as the framework.
    pub kernel: SubspaceBasis,
    /// Whether the joints affinely span the ambient space; if not, `m` counts
    /// the symmetric motions of K_n rather than rigid motions.
    pub spanning: bool,
}

pub fn mobility(fw: &SymmetricFramework, os: &OrbitStructure) -> Result<Mobility, OrbitError> {
    let complete = fw.complete();
    let kn = complete
        .orbit_structure()?
        .with_joint_bases(os.joint_bases().to_vec(), 1e-8)
        .expect("complete graph has the same joint orbits");
    let om = orbit_matrix(&complete, &kn);
    let kernel = reduced_motions(&om, fw.tol())?;
    Ok(Mobility {
        m: kernel.dim(),
        kernel,
        spanning: fw.config().affinely_spans(fw.tol()),
    })
}

/// Orthonormal basis of the part of ker O orthogonal to the trivial
/// motions: one vector per independent fully symmetric flex.
pub fn flex_certificates(
    motions: &SubspaceBasis,
    trivial: &SubspaceBasis,
    tol: &Tolerance,
) -> Result<SubspaceBasis, LinalgError> {
    let c = motions.ambient_dim();
    if motions.is_empty() {
        return Ok(SubspaceBasis::empty(c));
    }
    let complement = DMatrix::identity(c, c) - trivial.projector();
    let projected = complement * motions.matrix();
    // discard directions that the projection flattens
    let basis = linalg::column_space(&projected, &Tolerance { rel: 1e-6, ..*tol })?;
    Ok(basis)
}

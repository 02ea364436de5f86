//! Tolerance-aware dense linear algebra.
//!
//! Ranks and kernels are decided from singular values with a cutoff relative
//! to the largest singular value. Empty matrices (zero rows or zero columns)
//! are legal everywhere and have rank 0.

use nalgebra::{DMatrix, DVector, SVD};
use thiserror::Error;

/// Dense real matrix used for rigidity matrices, orbit matrices and group
/// elements alike.
pub type RealMatrix = DMatrix<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix entry ({row}, {col}) is not finite")]
    InvalidMatrix { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid tolerance: rel must lie in (0, 1) and abs must be positive")]
    InvalidTolerance,
    #[error("intersection of an empty list of subspaces")]
    EmptyInput,
}

/// Numerical thresholds shared by the whole pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative singular-value cutoff used for ranks and kernels.
    pub rel: f64,
    /// Absolute threshold for entrywise comparisons.
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self, LinalgError> {
        let rel_ok = rel > 0.0 && rel < 1.0;
        if !rel_ok || abs.is_nan() || abs <= 0.0 || abs.is_infinite() {
            return Err(LinalgError::InvalidTolerance);
        }
        Ok(Tolerance { rel, abs })
    }

    /// Bound on `‖M v‖` for a unit vector `v` reported to lie in the kernel
    /// of a matrix whose largest singular value is `sigma_max`.
    pub fn residual_bound(&self, sigma_max: f64) -> f64 {
        10.0 * self.rel * sigma_max
    }
}

/// An orthonormal basis of a linear subspace, stored as the columns of an
/// `ambient_dim × dim` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: DMatrix<f64>,
}

impl SubspaceBasis {
    /// Wraps columns the caller guarantees to be orthonormal.
    pub(crate) fn from_orthonormal_columns(basis: DMatrix<f64>) -> Self {
        SubspaceBasis {
            ambient_dim: basis.nrows(),
            basis,
        }
    }

    /// Orthonormal basis of the column span of `vectors`, after checking
    /// that the columns really are orthonormal within `tol`.
    pub fn from_columns(vectors: DMatrix<f64>, tol: f64) -> Option<Self> {
        let gram = vectors.transpose() * &vectors;
        let k = gram.nrows();
        let ok = (0..k).all(|i| {
            (0..k).all(|j| {
                let target = if i == j { 1.0 } else { 0.0 };
                (gram[(i, j)] - target).abs() <= tol
            })
        });
        ok.then(|| Self::from_orthonormal_columns(vectors))
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self::from_orthonormal_columns(DMatrix::zeros(ambient_dim, 0))
    }

    /// The canonical basis of the whole space.
    pub fn full(ambient_dim: usize) -> Self {
        Self::from_orthonormal_columns(DMatrix::identity(ambient_dim, ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    /// The `ambient_dim × dim` matrix whose columns are the basis vectors.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.basis.column(k).into_owned()
    }

    pub fn vectors(&self) -> impl Iterator<Item = DVector<f64>> + '_ {
        (0..self.dim()).map(move |k| self.vector(k))
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }

    /// Distance from `v` to the subspace.
    pub fn distance(&self, v: &DVector<f64>) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Re-expresses the same subspace in a deterministic basis: the canonical
    /// vectors `e_1, e_2, …` are projected onto the subspace and orthonormalized
    /// in order, skipping those that add nothing new.
    pub fn canonicalized(&self) -> Self {
        let d = self.ambient_dim;
        let k = self.dim();
        if k == 0 || k == d {
            return if k == d {
                Self::full(d)
            } else {
                self.clone()
            };
        }
        let proj = self.projector();
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(k);
        for e in 0..d {
            if cols.len() == k {
                break;
            }
            let mut v = proj.column(e).into_owned();
            for c in &cols {
                let dot = c.dot(&v);
                v -= c * dot;
            }
            // second pass keeps the columns orthogonal to working precision
            for c in &cols {
                let dot = c.dot(&v);
                v -= c * dot;
            }
            let norm = v.norm();
            if norm > 1e-6 {
                cols.push(v / norm);
            }
        }
        if cols.len() < k {
            return self.clone();
        }
        Self::from_orthonormal_columns(DMatrix::from_columns(&cols))
    }

    /// Largest distance from a basis vector of `self` to `other`.
    pub fn projection_residual(&self, other: &SubspaceBasis) -> f64 {
        self.vectors()
            .map(|v| other.distance(&v))
            .fold(0.0, f64::max)
    }
}

fn check_finite(m: &DMatrix<f64>) -> Result<(), LinalgError> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if !m[(i, j)].is_finite() {
                return Err(LinalgError::InvalidMatrix { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Singular values in descending order.
pub fn singular_values(m: &RealMatrix) -> Result<Vec<f64>, LinalgError> {
    check_finite(m)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    let svd = SVD::new(m.clone(), false, false);
    Ok(svd.singular_values.iter().copied().collect())
}

/// Largest singular value (0 for empty matrices).
pub fn spectral_norm(m: &RealMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

fn count_above(sv: &[f64], tol: &Tolerance) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    let cutoff = tol.rel * smax;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Number of singular values above `tol.rel · σ_max`.
pub fn rank(m: &RealMatrix, tol: &Tolerance) -> Result<usize, LinalgError> {
    Ok(count_above(&singular_values(m)?, tol))
}

/// Orthonormal basis of `{v : M v ≈ 0}`.
pub fn nullspace(m: &RealMatrix, tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    check_finite(m)?;
    let n = m.ncols();
    if n == 0 {
        return Ok(SubspaceBasis::empty(0));
    }
    if m.nrows() == 0 {
        return Ok(SubspaceBasis::full(n));
    }
    // Pad with zero rows so the decomposition returns a full right basis.
    let work = if m.nrows() < n {
        let mut padded = DMatrix::zeros(n, n);
        padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = SVD::new(work, false, true);
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let r = count_above(&sv, tol);
    // sorted descending, so the trailing rows of Vᵀ span the kernel
    let cols: Vec<DVector<f64>> = (r..n).map(|i| v_t.row(i).transpose()).collect();
    if cols.is_empty() {
        return Ok(SubspaceBasis::empty(n));
    }
    Ok(SubspaceBasis::from_orthonormal_columns(DMatrix::from_columns(
        &cols,
    )))
}

/// Orthonormal basis of `{w : wᵀ M ≈ 0}`.
pub fn left_nullspace(m: &RealMatrix, tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    nullspace(&m.transpose(), tol)
}

/// Orthonormal basis of the column span of `m`.
pub fn column_space(m: &RealMatrix, tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    check_finite(m)?;
    let d = m.nrows();
    if d == 0 || m.ncols() == 0 {
        return Ok(SubspaceBasis::empty(d));
    }
    let work = if m.ncols() < d {
        let mut padded = DMatrix::zeros(d, d);
        padded.view_mut((0, 0), (d, m.ncols())).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = SVD::new(work, true, false);
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let r = count_above(&sv, tol);
    if r == 0 {
        return Ok(SubspaceBasis::empty(d));
    }
    Ok(SubspaceBasis::from_orthonormal_columns(
        u.columns(0, r).into_owned(),
    ))
}

/// Orthonormal basis of the intersection of the given subspaces, computed as
/// the kernel of the stacked complement projectors `I − B Bᵀ`.
pub fn intersect(subspaces: &[SubspaceBasis], tol: &Tolerance) -> Result<SubspaceBasis, LinalgError> {
    let first = subspaces.first().ok_or(LinalgError::EmptyInput)?;
    let d = first.ambient_dim();
    for s in subspaces {
        if s.ambient_dim() != d {
            return Err(LinalgError::DimensionMismatch {
                expected: d,
                found: s.ambient_dim(),
            });
        }
    }
    let mut stacked = DMatrix::zeros(d * subspaces.len(), d);
    for (k, s) in subspaces.iter().enumerate() {
        let complement = DMatrix::identity(d, d) - s.projector();
        stacked.view_mut((k * d, 0), (d, d)).copy_from(&complement);
    }
    nullspace(&stacked, tol)
}

/// Vertically stacks matrices with equal column counts.
pub fn vstack(blocks: &[&RealMatrix]) -> Result<RealMatrix, LinalgError> {
    let cols = blocks.first().map(|b| b.ncols()).unwrap_or(0);
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        if b.ncols() != cols {
            return Err(LinalgError::DimensionMismatch {
                expected: cols,
                found: b.ncols(),
            });
        }
        out.view_mut((at, 0), (b.nrows(), cols)).copy_from(*b);
        at += b.nrows();
    }
    Ok(out)
}

/// Scales `v` to unit norm with its first clearly nonzero entry positive.
/// Zero vectors are returned unchanged.
pub fn normalize_sign(v: &DVector<f64>) -> DVector<f64> {
    let norm = v.norm();
    if norm == 0.0 {
        return v.clone();
    }
    let mut out = v / norm;
    if let Some(first) = out.iter().copied().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            out.neg_mut();
        }
    }
    out
}

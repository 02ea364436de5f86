//! Finite point groups of orthogonal matrices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::linalg::{self, LinalgError, RealMatrix, SubspaceBasis, Tolerance};

/// Hard cap on the order of a generated group.
pub const MAX_GROUP_ORDER: usize = 10_000;

/// Entrywise tolerance used to decide whether two group matrices coincide.
pub const ELEMENT_DEDUP_TOL: f64 = 1e-9;

const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("generator {index} is not an orthogonal {dim}x{dim} matrix")]
    InvalidGenerator { index: usize, dim: usize },
    #[error("generated group exceeds {MAX_GROUP_ORDER} elements")]
    GroupNotFinite,
    #[error("invalid point group specification: {0}")]
    InvalidSpec(String),
    #[error("vertex {vertex} does not lie in its joint subspace (distance {distance:.3e})")]
    InconsistentConfiguration { vertex: usize, distance: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub matrix: RealMatrix,
    pub label: String,
}

/// Named point groups. Rotations act in the (x1, x2) plane; the standalone
/// mirror of `Cs` negates x1, the mirror of `Cmv` negates x2 (it contains the
/// rotation axis) and the mirror of `Cmh` negates x3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchoenfliesKind {
    /// The trivial group (written C1).
    Trivial,
    Cs,
    Cyclic(usize),
    Cmv(usize),
    Cmh(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchoenfliesSpec {
    pub kind: SchoenfliesKind,
    pub dim: usize,
}

impl SchoenfliesKind {
    /// Parses names such as `Cs`, `C1`, `C3`, `C2v`, `C3h`.
    pub fn parse(name: &str) -> Result<Self, SymmetryError> {
        let bad = || SymmetryError::InvalidSpec(format!("unknown Schoenflies symbol {name:?}"));
        let rest = name.strip_prefix('C').ok_or_else(bad)?;
        if rest == "s" {
            return Ok(SchoenfliesKind::Cs);
        }
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let suffix = &rest[digits.len()..];
        let m: usize = digits.parse().map_err(|_| bad())?;
        match (m, suffix) {
            (1, "") => Ok(SchoenfliesKind::Trivial),
            (m, "") if m >= 2 => Ok(SchoenfliesKind::Cyclic(m)),
            (m, "v") if m >= 2 => Ok(SchoenfliesKind::Cmv(m)),
            (m, "h") if m >= 2 => Ok(SchoenfliesKind::Cmh(m)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            SchoenfliesKind::Trivial => 1,
            SchoenfliesKind::Cs => 2,
            SchoenfliesKind::Cyclic(m) => m,
            SchoenfliesKind::Cmv(m) | SchoenfliesKind::Cmh(m) => 2 * m,
        }
    }
}

impl fmt::Display for SchoenfliesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchoenfliesKind::Trivial => write!(f, "C1"),
            SchoenfliesKind::Cs => write!(f, "Cs"),
            SchoenfliesKind::Cyclic(m) => write!(f, "C{m}"),
            SchoenfliesKind::Cmv(m) => write!(f, "C{m}v"),
            SchoenfliesKind::Cmh(m) => write!(f, "C{m}h"),
        }
    }
}

/// A finite group of orthogonal d×d matrices with its multiplication table.
///
/// Elements are listed in breadth-first order from the identity (index 0):
/// every other element is `generator · parent` for an earlier parent, which
/// is what lets a group action be extended from generator images.
#[derive(Debug, Clone)]
pub struct PointGroup {
    dim: usize,
    elements: Vec<GroupElement>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// For each non-identity element: (generator slot, parent element).
    parent: Vec<Option<(usize, usize)>>,
}

fn snap(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else if (v - 1.0).abs() < 1e-15 {
        1.0
    } else if (v + 1.0).abs() < 1e-15 {
        -1.0
    } else {
        v
    }
}

/// Rotation by `2π/m` in the (x1, x2) plane of ℝ^dim.
pub fn rotation(dim: usize, m: usize) -> RealMatrix {
    let theta = 2.0 * std::f64::consts::PI / m as f64;
    let mut r = DMatrix::identity(dim, dim);
    let (s, c) = theta.sin_cos();
    r[(0, 0)] = snap(c);
    r[(0, 1)] = snap(-s);
    r[(1, 0)] = snap(s);
    r[(1, 1)] = snap(c);
    r
}

/// Reflection negating coordinate `axis`.
pub fn reflection(dim: usize, axis: usize) -> RealMatrix {
    let mut r = DMatrix::identity(dim, dim);
    r[(axis, axis)] = -1.0;
    r
}

fn is_orthogonal(m: &RealMatrix) -> bool {
    if !m.is_square() || m.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let gram = m.transpose() * m;
    let n = m.nrows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let t = if i == j { 1.0 } else { 0.0 };
            (gram[(i, j)] - t).abs() <= ORTHOGONALITY_TOL
        })
    })
}

fn close(a: &RealMatrix, b: &RealMatrix, tol: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
}

/// Approximate lookup of matrices. Each matrix is hashed by a fixed linear
/// functional of its entries, bucketed; matrices within the dedup tolerance
/// have functionals within `slack`, so probing the neighbouring buckets is
/// exhaustive.
struct ElementIndex {
    buckets: HashMap<i64, Vec<usize>>,
    slack: f64,
}

const BUCKET_WIDTH: f64 = 1e-6;

impl ElementIndex {
    fn new(dim: usize) -> Self {
        let slack = ELEMENT_DEDUP_TOL * (0..dim * dim).map(Self::weight).sum::<f64>();
        ElementIndex {
            buckets: HashMap::new(),
            slack,
        }
    }

    fn weight(k: usize) -> f64 {
        1.0 + 0.618_033_988_749_895 * k as f64
    }

    fn functional(m: &RealMatrix) -> f64 {
        m.iter().enumerate().map(|(k, v)| Self::weight(k) * v).sum()
    }

    fn bucket(f: f64) -> i64 {
        (f / BUCKET_WIDTH).floor() as i64
    }

    fn find(&self, m: &RealMatrix, all: &[RealMatrix]) -> Option<usize> {
        let f = Self::functional(m);
        (Self::bucket(f - self.slack)..=Self::bucket(f + self.slack))
            .filter_map(|b| self.buckets.get(&b))
            .flatten()
            .copied()
            .find(|&k| close(&all[k], m, ELEMENT_DEDUP_TOL))
    }

    fn insert(&mut self, m: &RealMatrix, k: usize) {
        self.buckets
            .entry(Self::bucket(Self::functional(m)))
            .or_default()
            .push(k);
    }
}

fn compress_word(word: &[usize], names: &[String]) -> String {
    if word.is_empty() {
        return "Id".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let g = word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == g {
            run += 1;
        }
        out.push_str(&names[g]);
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}

impl PointGroup {
    /// Closes the generators under multiplication.
    ///
    /// `names` supplies one label per generator; labels of other elements are
    /// the generator words that first reach them.
    pub fn from_generators(
        dim: usize,
        generators: &[RealMatrix],
        names: Option<&[String]>,
    ) -> Result<Self, SymmetryError> {
        for (index, g) in generators.iter().enumerate() {
            if g.nrows() != dim || !is_orthogonal(g) {
                return Err(SymmetryError::InvalidGenerator { index, dim });
            }
        }
        let names: Vec<String> = match names {
            Some(n) if n.len() == generators.len() => n.to_vec(),
            _ => (0..generators.len()).map(|k| format!("g{}", k + 1)).collect(),
        };

        let mut mats = vec![DMatrix::identity(dim, dim)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut parent = vec![None];
        let mut index = ElementIndex::new(dim);
        index.insert(&mats[0], 0);
        let mut gen_index = vec![0; generators.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (slot, g) in generators.iter().enumerate() {
                let cand = g * &mats[e];
                let found = index.find(&cand, &mats);
                let k = match found {
                    Some(k) => k,
                    None => {
                        if mats.len() >= MAX_GROUP_ORDER {
                            return Err(SymmetryError::GroupNotFinite);
                        }
                        let k = mats.len();
                        index.insert(&cand, k);
                        mats.push(cand);
                        let mut w = vec![slot];
                        w.extend_from_slice(&words[e]);
                        words.push(w);
                        parent.push(Some((slot, e)));
                        queue.push_back(k);
                        k
                    }
                };
                if e == 0 {
                    gen_index[slot] = k;
                }
            }
        }

        let order = mats.len();
        let mut mult = vec![vec![0; order]; order];
        for i in 0..order {
            for j in 0..order {
                let prod = &mats[i] * &mats[j];
                mult[i][j] = index
                    .find(&prod, &mats)
                    .ok_or(SymmetryError::GroupNotFinite)?;
            }
        }
        let inverse = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| mult[i][j] == 0)
                    .ok_or(SymmetryError::GroupNotFinite)
            })
            .collect::<Result<Vec<_>, _>>()?;

        let elements = mats
            .into_iter()
            .zip(&words)
            .map(|(matrix, w)| GroupElement {
                matrix,
                label: compress_word(w, &names),
            })
            .collect();
        Ok(PointGroup {
            dim,
            elements,
            mult,
            inverse,
            generators: gen_index,
            parent,
        })
    }

    pub fn trivial(dim: usize) -> Self {
        Self::from_generators(dim, &[], None).expect("trivial group")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &GroupElement {
        &self.elements[k]
    }

    pub fn matrix(&self, k: usize) -> &RealMatrix {
        &self.elements[k].matrix
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Element index of each generator, in the order supplied.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `(generator slot, parent)` such that this element equals
    /// `generator · parent`; `None` for the identity.
    pub fn parent(&self, k: usize) -> Option<(usize, usize)> {
        self.parent[k]
    }

    /// Index of the element whose matrix matches `m`, if any.
    pub fn find(&self, m: &RealMatrix) -> Option<usize> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return None;
        }
        self.elements
            .iter()
            .position(|e| close(&e.matrix, m, ELEMENT_DEDUP_TOL))
    }

    /// Same group with every matrix extended by a trailing 1 on the diagonal.
    pub fn extended(&self) -> Self {
        let d = self.dim + 1;
        let elements = self
            .elements
            .iter()
            .map(|e| {
                let mut m = DMatrix::identity(d, d);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(&e.matrix);
                GroupElement {
                    matrix: m,
                    label: e.label.clone(),
                }
            })
            .collect();
        PointGroup {
            dim: d,
            elements,
            ..self.clone()
        }
    }

    pub fn element_kind(&self, k: usize, tol: &Tolerance) -> ElementKind {
        classify(&self.elements[k].matrix, tol)
    }
}

/// Builds a named point group in the stated dimension.
pub fn build_group(spec: SchoenfliesSpec) -> Result<PointGroup, SymmetryError> {
    let d = spec.dim;
    let need = |min: usize| {
        if d < min {
            Err(SymmetryError::InvalidSpec(format!(
                "{} requires dimension at least {min}, got {d}",
                spec.kind
            )))
        } else {
            Ok(())
        }
    };
    let name = |s: &str| s.to_string();
    match spec.kind {
        SchoenfliesKind::Trivial => {
            need(1)?;
            Ok(PointGroup::trivial(d))
        }
        SchoenfliesKind::Cs => {
            need(1)?;
            PointGroup::from_generators(d, &[reflection(d, 0)], Some(&[name("s")]))
        }
        SchoenfliesKind::Cyclic(m) => {
            need(2)?;
            PointGroup::from_generators(d, &[rotation(d, m)], Some(&[format!("C{m}")]))
        }
        SchoenfliesKind::Cmv(m) => {
            need(2)?;
            PointGroup::from_generators(
                d,
                &[rotation(d, m), reflection(d, 1)],
                Some(&[format!("C{m}"), name("s")]),
            )
        }
        SchoenfliesKind::Cmh(m) => {
            need(3)?;
            PointGroup::from_generators(
                d,
                &[rotation(d, m), reflection(d, 2)],
                Some(&[format!("C{m}"), name("s")]),
            )
        }
    }
}

/// Orthonormal basis of the points fixed by `x`, i.e. of ker(X − I).
pub fn fixed_subspace(x: &RealMatrix, tol: &Tolerance) -> Result<SubspaceBasis, SymmetryError> {
    let d = x.nrows();
    let shifted = x - DMatrix::identity(d, d);
    if shifted.iter().all(|v| v.abs() <= tol.abs) {
        return Ok(SubspaceBasis::full(d));
    }
    Ok(linalg::nullspace(&shifted, tol)?.canonicalized())
}

/// Intersection of the fixed subspaces of the listed elements. A stabilizer
/// holding only the identity yields the canonical basis of ℝ^d.
pub fn common_fixed_subspace(
    group: &PointGroup,
    elements: &[usize],
    tol: &Tolerance,
) -> Result<SubspaceBasis, SymmetryError> {
    let nontrivial: Vec<usize> = elements.iter().copied().filter(|&k| k != 0).collect();
    if nontrivial.is_empty() {
        return Ok(SubspaceBasis::full(group.dim()));
    }
    let spaces = nontrivial
        .iter()
        .map(|&k| fixed_subspace(group.matrix(k), tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::intersect(&spaces, tol)?.canonicalized())
}

/// The joint subspace U(p) for a point whose stabilizer is `stabilizer`,
/// after checking that `point` actually lies in it.
pub fn joint_subspace(
    group: &PointGroup,
    stabilizer: &[usize],
    point: &DVector<f64>,
    vertex: usize,
    tol: &Tolerance,
) -> Result<SubspaceBasis, SymmetryError> {
    let basis = common_fixed_subspace(group, stabilizer, tol)?;
    let distance = basis.distance(point);
    if distance > tol.abs * point.norm().max(1.0) {
        return Err(SymmetryError::InconsistentConfiguration { vertex, distance });
    }
    Ok(basis)
}

/// Structural type of a single orthogonal transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Identity,
    /// An involution acting as −I on a 2-plane.
    HalfTurn,
    /// An involution acting as −1 on a line.
    Reflection,
    Other,
}

pub fn classify(x: &RealMatrix, tol: &Tolerance) -> ElementKind {
    let d = x.nrows();
    let id = DMatrix::identity(d, d);
    if close(x, &id, tol.abs.max(ELEMENT_DEDUP_TOL)) {
        return ElementKind::Identity;
    }
    let involution = close(&(x * x), &id, tol.abs.max(ELEMENT_DEDUP_TOL));
    if !involution {
        return ElementKind::Other;
    }
    match linalg::rank(&(x - id), tol) {
        Ok(1) => ElementKind::Reflection,
        Ok(2) => ElementKind::HalfTurn,
        _ => ElementKind::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn group(kind: SchoenfliesKind, dim: usize) -> PointGroup {
        build_group(SchoenfliesSpec { kind, dim }).unwrap()
    }

    #[test]
    fn half_turn_in_the_plane_is_minus_identity() {
        let g = group(SchoenfliesKind::Cyclic(2), 2);
        assert_eq!(g.order(), 2);
        assert_eq!(g.matrix(1), &(-DMatrix::<f64>::identity(2, 2)));
        assert_eq!(g.element(1).label, "C2");
    }

    #[test]
    fn mirror_negates_first_coordinate() {
        let g = group(SchoenfliesKind::Cs, 2);
        assert_eq!(g.order(), 2);
        assert_eq!(g.matrix(1), &DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn c2v_in_the_plane() {
        let g = group(SchoenfliesKind::Cmv(2), 2);
        assert_eq!(g.order(), 4);
        let want = [
            [1.0, 1.0],
            [-1.0, -1.0],
            [1.0, -1.0],
            [-1.0, 1.0],
        ];
        for w in want {
            let m = DMatrix::from_diagonal(&DVector::from_row_slice(&w));
            assert!(g.find(&m).is_some(), "missing diag{w:?}");
        }
        let sh = g.find(&DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, -1.0]))).unwrap();
        assert_eq!(g.element(sh).label, "s");
    }

    #[test]
    fn orders_of_named_groups() {
        for m in 2..=8 {
            assert_eq!(group(SchoenfliesKind::Cyclic(m), 2).order(), m);
            assert_eq!(group(SchoenfliesKind::Cyclic(m), 4).order(), m);
            assert_eq!(group(SchoenfliesKind::Cmv(m), 3).order(), 2 * m);
            assert_eq!(group(SchoenfliesKind::Cmh(m), 3).order(), 2 * m);
            assert_eq!(group(SchoenfliesKind::Cmh(m), 5).order(), 2 * m);
        }
        assert_eq!(group(SchoenfliesKind::Cs, 3).order(), 2);
        assert_eq!(group(SchoenfliesKind::Trivial, 3).order(), 1);
        assert!(build_group(SchoenfliesSpec { kind: SchoenfliesKind::Cmh(2), dim: 2 }).is_err());
    }

    #[test]
    fn tables_are_consistent() {
        for (kind, dim) in [
            (SchoenfliesKind::Cmv(3), 2),
            (SchoenfliesKind::Cmh(3), 3),
            (SchoenfliesKind::Cmv(6), 3),
            (SchoenfliesKind::Cyclic(5), 3),
        ] {
            let g = group(kind, dim);
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(a, g.inverse(a)), 0);
                for b in 0..n {
                    let prod = g.matrix(a) * g.matrix(b);
                    assert!(close(&prod, g.matrix(g.mul(a, b)), 1e-12));
                    if n <= 12 {
                        for c in 0..n {
                            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                        }
                    }
                }
            }
            for a in 0..n {
                for b in a + 1..n {
                    assert!(!close(g.matrix(a), g.matrix(b), ELEMENT_DEDUP_TOL));
                }
            }
        }
    }

    #[test]
    fn parents_reconstruct_elements() {
        let g = group(SchoenfliesKind::Cmh(3), 3);
        for k in 1..g.order() {
            let (slot, p) = g.parent(k).unwrap();
            assert!(p < k);
            assert_eq!(g.mul(g.generators()[slot], p), k);
        }
    }

    #[test]
    fn labels_come_from_generator_words() {
        let g = group(SchoenfliesKind::Cmh(3), 3);
        let labels: Vec<&str> = g.elements().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels[0], "Id");
        assert!(labels.contains(&"C3^2"));
        assert!(labels.contains(&"s"));
    }

    #[test]
    fn generator_validation() {
        let skew = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(
            PointGroup::from_generators(2, &[skew], None).unwrap_err(),
            SymmetryError::InvalidGenerator { index: 0, dim: 2 }
        );
        // irrational rotation never closes
        let theta: f64 = 1.0;
        let r = DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
        assert_eq!(
            PointGroup::from_generators(2, &[r], None).unwrap_err(),
            SymmetryError::GroupNotFinite
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!(SchoenfliesKind::parse("Cs").unwrap(), SchoenfliesKind::Cs);
        assert_eq!(SchoenfliesKind::parse("C1").unwrap(), SchoenfliesKind::Trivial);
        assert_eq!(SchoenfliesKind::parse("C2").unwrap(), SchoenfliesKind::Cyclic(2));
        assert_eq!(SchoenfliesKind::parse("C2v").unwrap(), SchoenfliesKind::Cmv(2));
        assert_eq!(SchoenfliesKind::parse("C3h").unwrap(), SchoenfliesKind::Cmh(3));
        assert!(SchoenfliesKind::parse("D3").is_err());
        assert!(SchoenfliesKind::parse("C1v").is_err());
        for k in [SchoenfliesKind::Cs, SchoenfliesKind::Cmv(4), SchoenfliesKind::Cyclic(7)] {
            assert_eq!(SchoenfliesKind::parse(&k.to_string()).unwrap(), k);
        }
    }

    #[test]
    fn fixed_subspaces() {
        let t = tol();
        assert_eq!(fixed_subspace(&DMatrix::identity(3, 3), &t).unwrap().dim(), 3);
        assert!(fixed_subspace(&(-DMatrix::<f64>::identity(2, 2)), &t).unwrap().is_empty());
        let plane = fixed_subspace(&reflection(3, 0), &t).unwrap();
        assert_eq!(plane.dim(), 2);
        assert_relative_eq!(plane.vector(0), DVector::from_vec(vec![0.0, 1.0, 0.0]));
        assert_relative_eq!(plane.vector(1), DVector::from_vec(vec![0.0, 0.0, 1.0]));
        for (kind, dim) in [(SchoenfliesKind::Cmh(4), 3), (SchoenfliesKind::Cmv(3), 4)] {
            let g = group(kind, dim);
            for e in g.elements() {
                let f = fixed_subspace(&e.matrix, &t).unwrap();
                let r = linalg::rank(&(&e.matrix - DMatrix::identity(dim, dim)), &t).unwrap();
                assert_eq!(f.dim() + r, dim);
            }
        }
    }

    #[test]
    fn joint_subspace_on_the_mirror() {
        let g = group(SchoenfliesKind::Cs, 2);
        let t = tol();
        let on = DVector::from_vec(vec![0.0, 3.0]);
        let u = joint_subspace(&g, &[0, 1], &on, 1, &t).unwrap();
        assert_eq!(u.dim(), 1);
        assert_relative_eq!(u.vector(0), DVector::from_vec(vec![0.0, 1.0]));
        let off = DVector::from_vec(vec![0.5, 3.0]);
        assert!(matches!(
            joint_subspace(&g, &[0, 1], &off, 1, &t),
            Err(SymmetryError::InconsistentConfiguration { vertex: 1, .. })
        ));
        let free = joint_subspace(&g, &[0], &off, 0, &t).unwrap();
        assert_eq!(free.matrix(), &DMatrix::identity(2, 2));
    }

    #[test]
    fn classification() {
        let t = tol();
        assert_eq!(classify(&DMatrix::identity(3, 3), &t), ElementKind::Identity);
        assert_eq!(classify(&reflection(4, 2), &t), ElementKind::Reflection);
        assert_eq!(classify(&rotation(5, 2), &t), ElementKind::HalfTurn);
        assert_eq!(classify(&rotation(3, 3), &t), ElementKind::Other);
        assert_eq!(classify(&(-DMatrix::<f64>::identity(3, 3)), &t), ElementKind::Other);
    }

    #[test]
    fn extension_adds_a_fixed_axis() {
        let g = group(SchoenfliesKind::Cyclic(2), 3).extended();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.order(), 2);
        assert_eq!(g.matrix(1)[(3, 3)], 1.0);
        assert_eq!(fixed_subspace(g.matrix(1), &tol()).unwrap().dim(), 2);
    }
}

//! Verdicts on symmetric flexibility: counting rules, rank-based detection,
//! proper stresses of symmetric tensegrities, and the full analysis pipeline.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::framework::{FixedCounts, OrbitStructure, SymmetricFramework};
use crate::linalg::{self, LinalgError, SubspaceBasis, Tolerance};
use crate::orbit::{self, Mobility, OrbitError, OrbitMatrix};
use crate::rigidity::{self, RigidityError};
use crate::symmetry::{ElementKind, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PredictError {
    #[error("bars {first:?} and {second:?} lie in one orbit but have different member kinds")]
    InvalidAssignment { first: (usize, usize), second: (usize, usize) },
    #[error("bar {{{0},{1}}} is listed as a member but is not an edge")]
    UnknownMember(usize, usize),
    #[error("bar {{{0},{1}}} is listed both as a cable and as a strut")]
    ConflictingMember(usize, usize),
    #[error("edge weights are not a self-stress (residual {residual:.3e})")]
    NotASelfStress { residual: f64 },
    #[error("stress has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sizes of the orbit matrix and the symmetric trivial motions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    /// Number of edge orbits (rows).
    pub r: usize,
    /// Sum of the joint subspace dimensions (columns).
    pub c: usize,
    /// Dimension of the fully symmetric trivial motions.
    pub m: usize,
    /// Whether the joints affinely span the ambient space.
    pub spanning: bool,
}

impl Counts {
    pub fn from_parts(os: &OrbitStructure, mobility: &Mobility) -> Self {
        Counts {
            r: os.edge_orbits().len(),
            c: os.column_count(),
            m: mobility.m,
            spanning: mobility.spanning,
        }
    }

    /// `c − m − r`, the guaranteed number of independent symmetric flexes
    /// when positive.
    pub fn excess(&self) -> i64 {
        self.c as i64 - self.m as i64 - self.r as i64
    }
}

pub fn counts(fw: &SymmetricFramework) -> Result<Counts, PredictError> {
    let os = fw.orbit_structure()?;
    let mob = orbit::mobility(fw, &os)?;
    Ok(Counts::from_parts(&os, &mob))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Maxwell,
    PlaneHalfTurn,
    PlaneMirror,
    SpaceHalfTurn,
    SpaceMirror,
    HigherHalfTurn,
    HigherMirror,
    Rank,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::Maxwell => "maxwell",
            Rule::PlaneHalfTurn => "thm-2d-c2",
            Rule::PlaneMirror => "thm-2d-cs",
            Rule::SpaceHalfTurn => "thm-3d-c2",
            Rule::SpaceMirror => "thm-3d-cs",
            Rule::HigherHalfTurn => "thm-d-c2",
            Rule::HigherMirror => "thm-d-cs",
            Rule::Rank => "rank",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    /// A fully symmetric infinitesimal flex exists.
    FlexCertified,
    /// The only fully symmetric motions at this configuration are trivial.
    NoFlexAtThisConfig,
    Inconclusive,
}

impl Conclusion {
    pub fn id(&self) -> &'static str {
        match self {
            Conclusion::FlexCertified => "flex-certified",
            Conclusion::NoFlexAtThisConfig => "no-flex-at-this-config",
            Conclusion::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub rule: Rule,
    pub conclusion: Conclusion,
    /// Named integer quantities the rule was evaluated on.
    pub values: Vec<(String, i64)>,
    pub hypothesis: String,
    pub notes: Vec<String>,
    /// A reduced flex backing a positive conclusion, when one is known.
    pub certificate: Option<DVector<f64>>,
    /// Set when the flex extends to a finite symmetry-preserving mechanism,
    /// which needs the configuration to be symmetry-generic.
    pub finite_mechanism: bool,
}

impl Verdict {
    fn new(rule: Rule, conclusion: Conclusion, hypothesis: impl Into<String>, values: Vec<(&str, i64)>) -> Self {
        Verdict {
            rule,
            conclusion,
            values: values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            hypothesis: hypothesis.into(),
            notes: Vec::new(),
            certificate: None,
            finite_mechanism: false,
        }
    }

    /// Attaches the certificate and the genericity annotation.
    pub fn backed_by(mut self, certificate: Option<&DVector<f64>>, generic: bool) -> Self {
        if self.conclusion == Conclusion::FlexCertified {
            self.certificate = certificate.cloned();
            self.finite_mechanism = generic;
        }
        self
    }
}

/// `r < c − m` certifies a flex; counts never certify rigidity.
pub fn maxwell_verdict(counts: &Counts) -> Verdict {
    let (r, c, m) = (counts.r as i64, counts.c as i64, counts.m as i64);
    let conclusion = if r < c - m {
        Conclusion::FlexCertified
    } else {
        Conclusion::Inconclusive
    };
    let mut v = Verdict::new(Rule::Maxwell, conclusion, "r < c - m", vec![("r", r), ("c", c), ("m", m)]);
    if r > c - m {
        v.notes
            .push(format!("r > c - m: at least {} fully symmetric self-stress(es) guaranteed", r - (c - m)));
    }
    if !counts.spanning {
        v.notes
            .push("joints do not affinely span the space; m counts symmetric motions of the complete graph".into());
    }
    v
}

/// Structural shape of an order-2 group.
fn involution_kind(fw: &SymmetricFramework) -> Option<ElementKind> {
    let group = fw.group();
    if group.order() != 2 {
        return None;
    }
    Some(group.element_kind(1, fw.tol()))
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Counting theorems for half-turn and mirror groups. Only rules whose
/// dimension, group shape and edge count match are returned.
pub fn special_counting_verdicts(fw: &SymmetricFramework, fixed: &FixedCounts) -> Vec<Verdict> {
    let Some(kind) = involution_kind(fw) else {
        return Vec::new();
    };
    let d = fw.dim() as i64;
    let n = fw.graph().vertex_count() as i64;
    let e = fw.graph().edge_count() as i64;
    let j = fixed.joints[1] as i64;
    let b = fixed.bars[1] as i64;
    // the plane rules sit one bar below isostatic
    let target = if d == 2 { 2 * n - 4 } else { d * n - binom2(d + 1) };
    if e != target {
        return Vec::new();
    }
    let decide = |holds: bool| {
        if holds {
            Conclusion::FlexCertified
        } else {
            Conclusion::Inconclusive
        }
    };
    let verdict = match (kind, d) {
        (ElementKind::HalfTurn, 2) => Verdict::new(
            Rule::PlaneHalfTurn,
            decide(j == 0 && b == 0),
            "|E| = 2|V| - 4 and j_C2 = b_C2 = 0",
            vec![("j_C2", j), ("b_C2", b)],
        ),
        (ElementKind::Reflection, 2) => Verdict::new(
            Rule::PlaneMirror,
            decide(b == 0),
            "|E| = 2|V| - 4 and b_s = 0",
            vec![("j_s", j), ("b_s", b)],
        ),
        (ElementKind::HalfTurn, 3) => Verdict::new(
            Rule::SpaceHalfTurn,
            decide(j == 0 && b == 0),
            "|E| = 3|V| - 6 and j_C2 = b_C2 = 0",
            vec![("j_C2", j), ("b_C2", b)],
        ),
        (ElementKind::Reflection, 3) => Verdict::new(
            Rule::SpaceMirror,
            decide(j > b),
            "|E| = 3|V| - 6 and j_s > b_s",
            vec![("j_s", j), ("b_s", b)],
        ),
        (ElementKind::HalfTurn, 4) => Verdict::new(
            Rule::HigherHalfTurn,
            decide(b == 0),
            "d = 4, |E| = 4|V| - 10 and b_C2 = 0",
            vec![("d", d), ("j_C2", j), ("b_C2", b)],
        ),
        (ElementKind::HalfTurn, d) if d > 4 => Verdict::new(
            Rule::HigherHalfTurn,
            decide(2 * j * (d - 4) > 2 * b + d * (d - 7) + 8),
            "|E| = d|V| - C(d+1,2) and j_C2 > b_C2/(d-4) + (d(d-7)+8)/(2(d-4))",
            vec![("d", d), ("j_C2", j), ("b_C2", b)],
        ),
        (ElementKind::Reflection, d) if d > 3 => Verdict::new(
            Rule::HigherMirror,
            decide(2 * j * (d - 2) > 2 * b + d * (d - 3)),
            "|E| = d|V| - C(d+1,2) and j_s > b_s/(d-2) + d(d-3)/(2(d-2))",
            vec![("d", d), ("j_s", j), ("b_s", b)],
        ),
        _ => return Vec::new(),
    };
    vec![verdict]
}

/// Kernel, cokernel and flex certificates of an orbit matrix.
#[derive(Debug, Clone)]
pub struct RankAnalysis {
    pub rank: usize,
    /// ker O, trivial motions included.
    pub motions: SubspaceBasis,
    /// ker Oᵀ.
    pub stresses: SubspaceBasis,
    /// Part of ker O orthogonal to the symmetric trivial motions.
    pub flexes: SubspaceBasis,
    /// dim ker O − m, clamped at zero.
    pub flex_dim: usize,
    /// Set when dim ker O < m, which only tolerance trouble can cause.
    pub clamped: bool,
}

pub fn rank_analysis(om: &OrbitMatrix, mobility: &Mobility, tol: &Tolerance) -> Result<RankAnalysis, PredictError> {
    let rank = om.rank(tol)?;
    let motions = orbit::reduced_motions(om, tol)?;
    let stresses = orbit::reduced_stresses(om, tol)?;
    let raw = motions.dim() as i64 - mobility.m as i64;
    let flexes = orbit::flex_certificates(&motions, &mobility.kernel, tol)?;
    Ok(RankAnalysis {
        rank,
        motions,
        stresses,
        flexes,
        flex_dim: raw.max(0) as usize,
        clamped: raw < 0,
    })
}

/// Decides flexibility at this configuration from the actual rank of O.
pub fn rank_verdict(analysis: &RankAnalysis, mobility: &Mobility) -> Verdict {
    let conclusion = if analysis.flex_dim > 0 {
        Conclusion::FlexCertified
    } else {
        Conclusion::NoFlexAtThisConfig
    };
    let mut v = Verdict::new(
        Rule::Rank,
        conclusion,
        "dim ker O > m",
        vec![
            ("rank", analysis.rank as i64),
            ("dim_ker", analysis.motions.dim() as i64),
            ("m", mobility.m as i64),
            ("fully_symmetric_stresses", analysis.stresses.dim() as i64),
        ],
    );
    if conclusion == Conclusion::FlexCertified {
        v.certificate = analysis.flexes.vectors().next();
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberKind {
    /// May not lengthen; needs positive stress.
    Cable,
    /// May not shorten; needs negative stress.
    Strut,
    Bar,
}

impl MemberKind {
    fn sign(&self) -> Option<f64> {
        match self {
            MemberKind::Cable => Some(1.0),
            MemberKind::Strut => Some(-1.0),
            MemberKind::Bar => None,
        }
    }
}

/// Cables, struts and bars on the edges of a framework, constant on every
/// edge orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct TensegrityAssignment {
    kinds: Vec<MemberKind>,
}

impl TensegrityAssignment {
    pub fn new(fw: &SymmetricFramework, os: &OrbitStructure, kinds: Vec<MemberKind>) -> Result<Self, PredictError> {
        let graph = fw.graph();
        if kinds.len() != graph.edge_count() {
            return Err(PredictError::WrongLength {
                expected: graph.edge_count(),
                found: kinds.len(),
            });
        }
        for orbit in os.edge_orbits() {
            let first = orbit.edges[0];
            if let Some(&other) = orbit.edges.iter().find(|&&e| kinds[e] != kinds[first]) {
                let one = |e: usize| {
                    let (i, j) = graph.edge(e);
                    (i + 1, j + 1)
                };
                return Err(PredictError::InvalidAssignment {
                    first: one(first),
                    second: one(other),
                });
            }
        }
        Ok(TensegrityAssignment { kinds })
    }

    /// Builds an assignment from 0-based cable and strut lists; every other
    /// edge is a bar.
    pub fn from_members(
        fw: &SymmetricFramework,
        os: &OrbitStructure,
        cables: &[(usize, usize)],
        struts: &[(usize, usize)],
    ) -> Result<Self, PredictError> {
        let graph = fw.graph();
        let mut kinds = vec![MemberKind::Bar; graph.edge_count()];
        for (list, kind) in [(cables, MemberKind::Cable), (struts, MemberKind::Strut)] {
            for &(i, j) in list {
                let e = graph
                    .edge_index(i, j)
                    .ok_or(PredictError::UnknownMember(i + 1, j + 1))?;
                if kinds[e] != MemberKind::Bar {
                    return Err(PredictError::ConflictingMember(i + 1, j + 1));
                }
                kinds[e] = kind;
            }
        }
        Self::new(fw, os, kinds)
    }

    pub fn kinds(&self) -> &[MemberKind] {
        &self.kinds
    }

    pub fn kind(&self, e: usize) -> MemberKind {
        self.kinds[e]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StressSearch {
    /// A proper self-stress: positive on cables, negative on struts.
    Feasible { reduced: DVector<f64>, stress: DVector<f64> },
    /// No proper fully symmetric self-stress exists.
    Infeasible,
    /// The randomized search gave up; nothing is claimed.
    NotFound,
}

/// Kernel dimension up to which the search is exact.
pub const EXACT_SEARCH_MAX_DIM: usize = 3;
pub const RANDOM_SEARCH_DRAWS: usize = 10_000;

struct SignedRow {
    coeffs: DVector<f64>,
    sign: f64,
}

fn is_proper(stress: &DVector<f64>, assignment: &TensegrityAssignment, tol: &Tolerance) -> bool {
    let scale = stress.amax();
    if scale == 0.0 {
        return false;
    }
    assignment
        .kinds()
        .iter()
        .zip(stress.iter())
        .all(|(k, &w)| k.sign().is_none_or(|s| s * w > tol.abs * scale))
}

/// Maximizes `t` subject to `s_i (B c)_i ≥ t` and `|c_j| ≤ 1` by checking
/// every vertex of the feasible polyhedron.
fn best_vertex(rows: &[SignedRow], k: usize) -> Option<DVector<f64>> {
    // constraints a·z ≤ b with z = (c, t)
    let mut cons: Vec<(DVector<f64>, f64)> = Vec::new();
    for row in rows {
        let mut a = DVector::zeros(k + 1);
        a.rows_mut(0, k).copy_from(&(&row.coeffs * -row.sign));
        a[k] = 1.0;
        cons.push((a, 0.0));
    }
    for j in 0..k {
        for s in [1.0, -1.0] {
            let mut a = DVector::zeros(k + 1);
            a[j] = s;
            cons.push((a, 1.0));
        }
    }
    let q = cons.len();
    let mut best: Option<DVector<f64>> = None;
    let mut subset: Vec<usize> = (0..=k).collect();
    if q < k + 1 {
        return None;
    }
    loop {
        let a = DMatrix::from_fn(k + 1, k + 1, |r, c| cons[subset[r]].0[c]);
        let b = DVector::from_fn(k + 1, |r, _| cons[subset[r]].1);
        if let Some(z) = a.lu().solve(&b) {
            let feasible = z.iter().all(|v| v.is_finite())
                && cons.iter().all(|(a, b)| a.dot(&z) <= b + 1e-9);
            if feasible && best.as_ref().is_none_or(|w| z[k] > w[k]) {
                best = Some(z);
            }
        }
        // next combination in lexicographic order
        let mut i = k + 1;
        loop {
            if i == 0 {
                return best.map(|z| z.rows(0, k).into_owned());
            }
            i -= 1;
            if subset[i] < q - (k + 1) + i {
                subset[i] += 1;
                for l in i + 1..=k {
                    subset[l] = subset[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Searches the fully symmetric self-stresses for one that is strictly
/// positive on cables and strictly negative on struts.
pub fn proper_stress_check(
    fw: &SymmetricFramework,
    os: &OrbitStructure,
    om: &OrbitMatrix,
    assignment: &TensegrityAssignment,
) -> Result<StressSearch, PredictError> {
    let tol = fw.tol();
    let kernel = orbit::reduced_stresses(om, tol)?;
    let k = kernel.dim();
    let lift = |c: &DVector<f64>| -> Result<(DVector<f64>, DVector<f64>), PredictError> {
        let reduced = kernel.matrix() * c;
        let stress = orbit::lift_stress(fw, os, om, &reduced)?;
        Ok((reduced, stress))
    };
    if k == 0 {
        return Ok(StressSearch::Infeasible);
    }
    let rows: Vec<SignedRow> = os
        .edge_orbits()
        .iter()
        .enumerate()
        .filter_map(|(i, orbit)| {
            assignment.kind(orbit.edges[0]).sign().map(|sign| SignedRow {
                coeffs: kernel.matrix().row(i).transpose(),
                sign,
            })
        })
        .collect();
    if rows.is_empty() {
        let (reduced, stress) = lift(&DVector::from_fn(k, |i, _| if i == 0 { 1.0 } else { 0.0 }))?;
        return Ok(StressSearch::Feasible { reduced, stress });
    }
    if k <= EXACT_SEARCH_MAX_DIM {
        if let Some(c) = best_vertex(&rows, k) {
            let (reduced, stress) = lift(&c)?;
            if is_proper(&stress, assignment, tol) {
                return Ok(StressSearch::Feasible { reduced, stress });
            }
        }
        return Ok(StressSearch::Infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_SEARCH_DRAWS {
        let c = DVector::from_fn(k, |_, _| rng.random_range(-1.0..1.0));
        let (reduced, stress) = lift(&c)?;
        if is_proper(&stress, assignment, tol) {
            return Ok(StressSearch::Feasible { reduced, stress });
        }
    }
    Ok(StressSearch::NotFound)
}

/// Sums a self-stress over the group: `(σω)_e = Σ_x ω_{Φ(x)(e)}`. The result
/// is constant on edge orbits and keeps the signs of a proper stress on an
/// orbit-constant tensegrity.
pub fn symmetrize_stress(fw: &SymmetricFramework, stress: &DVector<f64>) -> Result<DVector<f64>, PredictError> {
    let graph = fw.graph();
    let m = graph.edge_count();
    if stress.len() != m {
        return Err(PredictError::WrongLength {
            expected: m,
            found: stress.len(),
        });
    }
    let r = rigidity::rigidity_matrix(graph, fw.config())?;
    let residual = (r.transpose() * stress).norm();
    let sigma = linalg::spectral_norm(&r)?;
    // round-off sized vectors count as the zero stress
    let bound = fw.tol().residual_bound(sigma) * stress.norm() + fw.tol().abs * sigma;
    if residual > bound {
        return Err(PredictError::NotASelfStress { residual });
    }
    let action = fw.action();
    Ok(DVector::from_fn(m, |e, _| {
        (0..fw.group().order())
            .map(|x| {
                let (a, b) = action.apply_edge(x, graph.edge(e));
                stress[graph.edge_index(a, b).expect("validated action preserves edges")]
            })
            .sum()
    }))
}

/// Cable and strut lists as 0-based vertex pairs.
pub type Members = (Vec<(usize, usize)>, Vec<(usize, usize)>);

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// The configuration is symmetry-generic (sampled or asserted), so
    /// certified flexes extend to finite mechanisms.
    pub generic: bool,
    /// Cable and strut lists (0-based vertex pairs) for a tensegrity check.
    pub tensegrity: Option<Members>,
}

#[derive(Debug, Clone)]
pub struct TensegrityReport {
    pub assignment: TensegrityAssignment,
    pub search: StressSearch,
    /// Underlying bar framework is infinitesimally rigid.
    pub bar_framework_rigid: bool,
    /// Bar framework rigid and a proper stress found.
    pub rigid: bool,
}

/// A reduced vector and its expansion to the whole framework.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub reduced: DVector<f64>,
    pub lifted: DVector<f64>,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub counts: Counts,
    pub orbit_structure: OrbitStructure,
    pub orbit_matrix: OrbitMatrix,
    pub fixed: FixedCounts,
    pub rank: RankAnalysis,
    pub flexes: Vec<Certificate>,
    pub stresses: Vec<Certificate>,
    pub verdicts: Vec<Verdict>,
    pub tensegrity: Option<TensegrityReport>,
    pub warnings: Vec<String>,
}

/// Orbits, orbit matrix, mobility, rank and counting verdicts, stresses and
/// the optional tensegrity check, in that order.
pub fn analyze(fw: &SymmetricFramework, options: &AnalysisOptions) -> Result<AnalysisReport, PredictError> {
    let tol = fw.tol();
    let os = fw.orbit_structure()?;
    let om = orbit::orbit_matrix(fw, &os);
    let mobility = orbit::mobility(fw, &os)?;
    let counts = Counts::from_parts(&os, &mobility);
    let fixed = fw.fixed_counts();
    let rank = rank_analysis(&om, &mobility, tol)?;

    let mut warnings = Vec::new();
    if !mobility.spanning {
        warnings.push(
            "joints do not affinely span the space; m counts the fully symmetric motions of the complete graph"
                .to_string(),
        );
    }
    if rank.clamped {
        warnings.push("kernel of O is smaller than m; flex dimension clamped to 0".to_string());
    }

    let flexes = rank
        .flexes
        .vectors()
        .map(|v| {
            let reduced = linalg::normalize_sign(&v);
            let lifted = orbit::lift_motion(fw, &os, &reduced)?;
            Ok(Certificate { reduced, lifted })
        })
        .collect::<Result<Vec<_>, PredictError>>()?;
    let stresses = rank
        .stresses
        .vectors()
        .map(|v| {
            let reduced = linalg::normalize_sign(&v);
            let lifted = orbit::lift_stress(fw, &os, &om, &reduced)?;
            Ok(Certificate { reduced, lifted })
        })
        .collect::<Result<Vec<_>, PredictError>>()?;

    let certificate = flexes.first().map(|c| &c.reduced);
    let mut verdicts = vec![rank_verdict(&rank, &mobility).backed_by(certificate, options.generic)];
    verdicts.push(maxwell_verdict(&counts).backed_by(certificate, options.generic));
    for v in special_counting_verdicts(fw, &fixed) {
        verdicts.push(v.backed_by(certificate, options.generic));
    }

    let tensegrity = match &options.tensegrity {
        None => None,
        Some((cables, struts)) => {
            let assignment = TensegrityAssignment::from_members(fw, &os, cables, struts)?;
            let search = proper_stress_check(fw, &os, &om, &assignment)?;
            let bar_framework_rigid = rigidity::is_infinitesimally_rigid(fw.graph(), fw.config(), tol)?;
            let rigid = bar_framework_rigid && matches!(search, StressSearch::Feasible { .. });
            Some(TensegrityReport {
                assignment,
                search,
                bar_framework_rigid,
                rigid,
            })
        }
    };

    Ok(AnalysisReport {
        counts,
        orbit_structure: os,
        orbit_matrix: om,
        fixed,
        rank,
        flexes,
        stresses,
        verdicts,
        tensegrity,
        warnings,
    })
}

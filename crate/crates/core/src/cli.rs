//! The `orbitrig` command line: JSON framework documents in, JSON reports and
//! SVG drawings out.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{self, Blueprint, ConstructionError};
use crate::framework::{self, Action, Configuration, Graph, SymmetricFramework};
use crate::linalg::Tolerance;
use crate::predict::{self, AnalysisOptions, AnalysisReport, PredictError, StressSearch};
use crate::svg::{self, SvgError};
use crate::symmetry::{self, PointGroup, SchoenfliesKind, SchoenfliesSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input: bad JSON, missing fields, unknown names.
    #[error("{0}")]
    Schema(String),
    /// Well-formed input describing an invalid symmetric framework.
    #[error("{message}")]
    Validation { message: String, details: Vec<String> },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 1,
            CliError::Validation { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        CliError::Validation {
            message: message.into(),
            details: Vec::new(),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::UnknownEntry(_) | ConstructionError::WrongParamCount { .. } => {
                CliError::Schema(e.to_string())
            }
            ConstructionError::Validation(v) => CliError::Validation {
                message: "invalid symmetric framework".into(),
                details: v.violations.iter().map(|x| x.to_string()).collect(),
            },
            other => CliError::invalid(other.to_string()),
        }
    }
}

impl From<PredictError> for CliError {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::InvalidAssignment { .. }
            | PredictError::UnknownMember(..)
            | PredictError::ConflictingMember(..) => CliError::invalid(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SvgError> for CliError {
    fn from(e: SvgError) -> Self {
        match e {
            SvgError::Unsupported(_) => CliError::invalid(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

// ---------------------------------------------------------------- documents

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Schoenflies {
        schoenflies: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    Generators {
        /// Row-major d×d matrices.
        generators: Vec<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementImage {
    pub matrix: Vec<Vec<f64>>,
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    /// Images of the group generators, in generator order, 1-based.
    Generators { generators: Vec<Vec<usize>> },
    /// The image of every group element, matched to the group by matrix.
    Elements { elements: Vec<ElementImage> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigurationSpec {
    Full { full: Vec<Vec<f64>> },
    /// One point per vertex orbit, keyed by any vertex of the orbit.
    Representatives { representatives: BTreeMap<String, Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensegritySpec {
    #[serde(default)]
    pub cables: Vec<[usize; 2]>,
    #[serde(default)]
    pub struts: Vec<[usize; 2]>,
}

/// A symmetric framework as stored on disk. Vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub group: GroupSpec,
    pub action: ActionSpec,
    pub configuration: ConfigurationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensegrity: Option<TensegritySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Asserts that the configuration is symmetry-generic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic: Option<bool>,
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

fn pairs(list: &[[usize; 2]], n: usize, what: &str) -> Result<Vec<(usize, usize)>, CliError> {
    list.iter()
        .map(|&[i, j]| {
            if i == 0 || j == 0 || i > n || j > n {
                Err(CliError::invalid(format!("{what} {{{i},{j}}} names a vertex outside 1..{n}")))
            } else {
                Ok((i - 1, j - 1))
            }
        })
        .collect()
}

impl FrameworkDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("malformed framework document: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_blueprint(bp: &Blueprint) -> Self {
        FrameworkDocument {
            name: Some(bp.name.clone()),
            dimension: bp.dim,
            vertices: bp.vertices,
            edges: bp.edges.iter().map(|&(i, j)| [i, j]).collect(),
            group: GroupSpec::Schoenflies {
                schoenflies: bp.group.to_string(),
                order: Some(bp.group.order()),
            },
            action: ActionSpec::Generators {
                generators: bp.generator_perms.clone(),
            },
            configuration: ConfigurationSpec::Representatives {
                representatives: bp.placements.iter().map(|(v, p)| (v.to_string(), p.clone())).collect(),
            },
            tensegrity: None,
            tolerance: None,
            generic: None,
        }
    }

    /// Writes out a validated framework with the given group description,
    /// whose generators must be those of `fw.group()`.
    pub fn from_framework(fw: &SymmetricFramework, group: GroupSpec, name: Option<String>) -> Self {
        let g = fw.group();
        FrameworkDocument {
            name,
            dimension: fw.dim(),
            vertices: fw.graph().vertex_count(),
            edges: fw.graph().edges().iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            group,
            action: ActionSpec::Generators {
                generators: g
                    .generators()
                    .iter()
                    .map(|&x| fw.action().perm(x).iter().map(|v| v + 1).collect())
                    .collect(),
            },
            configuration: ConfigurationSpec::Full {
                full: fw.config().points().iter().map(|p| p.iter().copied().collect()).collect(),
            },
            tensegrity: None,
            tolerance: None,
            generic: None,
        }
    }

    fn point_group(&self) -> Result<PointGroup, CliError> {
        let d = self.dimension;
        match &self.group {
            GroupSpec::Schoenflies { schoenflies, order } => {
                let kind = SchoenfliesKind::parse(schoenflies).map_err(|e| CliError::Schema(e.to_string()))?;
                if let Some(m) = order {
                    if *m != kind.order() {
                        return Err(CliError::Schema(format!(
                            "{schoenflies} has order {}, document says {m}",
                            kind.order()
                        )));
                    }
                }
                symmetry::build_group(SchoenfliesSpec { kind, dim: d }).map_err(|e| CliError::invalid(e.to_string()))
            }
            GroupSpec::Generators { generators, names } => {
                let mats = generators
                    .iter()
                    .enumerate()
                    .map(|(k, rows)| {
                        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                            return Err(CliError::Schema(format!("group generator {} is not {d}×{d}", k + 1)));
                        }
                        Ok(DMatrix::from_fn(d, d, |r, c| rows[r][c]))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                PointGroup::from_generators(d, &mats, names.as_deref()).map_err(|e| CliError::invalid(e.to_string()))
            }
        }
    }

    fn action(&self, group: &PointGroup) -> Result<Action, CliError> {
        let n = self.vertices;
        let zero_based = |p: &[usize]| -> Vec<usize> { p.iter().map(|&v| v.wrapping_sub(1)).collect() };
        let result = match &self.action {
            ActionSpec::Generators { generators } => {
                let perms: Vec<Vec<usize>> = generators.iter().map(|p| zero_based(p)).collect();
                Action::from_generators(group, n, &perms)
            }
            ActionSpec::Elements { elements } => {
                let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
                for (k, e) in elements.iter().enumerate() {
                    let d = group.dim();
                    if e.matrix.len() != d || e.matrix.iter().any(|r| r.len() != d) {
                        return Err(CliError::Schema(format!("action element {} is not {d}×{d}", k + 1)));
                    }
                    let m = DMatrix::from_fn(d, d, |r, c| e.matrix[r][c]);
                    let x = group
                        .find(&m)
                        .ok_or_else(|| CliError::invalid(format!("action element {} is not in the group", k + 1)))?;
                    if perms[x].is_some() {
                        return Err(CliError::invalid(format!("group element {} listed twice", group.element(x).label)));
                    }
                    perms[x] = Some(zero_based(&e.permutation));
                }
                let perms = perms
                    .into_iter()
                    .enumerate()
                    .map(|(x, p)| {
                        p.ok_or_else(|| CliError::invalid(format!("no image given for {}", group.element(x).label)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Action::from_element_perms(group, n, perms)
            }
        };
        result.map_err(|v| CliError::Validation {
            message: "invalid group action".into(),
            details: vec![v.to_string()],
        })
    }

    /// Builds and validates the framework.
    pub fn build(&self, tol: Tolerance) -> Result<SymmetricFramework, CliError> {
        let n = self.vertices;
        let edges = pairs(&self.edges, n, "edge")?;
        let graph = Graph::new(n, &edges).map_err(|e| CliError::invalid(e.to_string()))?;
        let group = self.point_group()?;
        let action = self.action(&group)?;
        let config = match &self.configuration {
            ConfigurationSpec::Full { full } => {
                Configuration::from_rows(self.dimension, full).map_err(|e| CliError::invalid(e.to_string()))?
            }
            ConfigurationSpec::Representatives { representatives } => {
                let mut placed = BTreeMap::new();
                for (key, p) in representatives {
                    let v: usize = key
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Schema(format!("representative key {key:?} is not a vertex number")))?;
                    if v == 0 || v > n {
                        return Err(CliError::invalid(format!("representative {v} is not a vertex")));
                    }
                    placed.insert(v - 1, DVector::from_vec(p.clone()));
                }
                framework::complete_configuration(&group, &action, &placed, &tol)
                    .map_err(|e| CliError::invalid(e.to_string()))?
            }
        };
        SymmetricFramework::validate(graph, config, group, action, tol)
            .map_err(|e| ConstructionError::Validation(e).into())
    }

    pub fn tensegrity_members(&self) -> Result<Option<predict::Members>, CliError> {
        match &self.tensegrity {
            None => Ok(None),
            Some(t) => Ok(Some((
                pairs(&t.cables, self.vertices, "cable")?,
                pairs(&t.struts, self.vertices, "strut")?,
            ))),
        }
    }
}

// ------------------------------------------------------------------ reports

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Unit length, first nonzero entry positive, round-off below 1e-12 of the
/// largest entry cleared, 12 significant digits.
pub fn canonical_vector(v: &DVector<f64>) -> Vec<f64> {
    let big = v.amax();
    if big == 0.0 {
        return vec![0.0; v.len()];
    }
    let cleaned = v.map(|x| if x.abs() <= 1e-12 * big { 0.0 } else { x });
    let mut unit = &cleaned / cleaned.norm();
    if unit.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0) {
        unit.neg_mut();
    }
    unit.iter().map(|&x| round12(x)).collect()
}

/// Like [`canonical_vector`] but keeps the sign, which carries meaning for
/// cables and struts.
fn signed_unit_vector(v: &DVector<f64>) -> Vec<f64> {
    let big = v.amax();
    if big == 0.0 {
        return vec![0.0; v.len()];
    }
    let cleaned = v.map(|x| if x.abs() <= 1e-12 * big { 0.0 } else { x });
    let n = cleaned.norm();
    cleaned.iter().map(|&x| round12(x / n)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountsJson {
    pub r: usize,
    pub c: usize,
    pub m: usize,
    pub spanning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimsJson {
    pub kernel: usize,
    pub fully_symmetric_flexes: usize,
    pub fully_symmetric_stresses: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedJson {
    pub element: String,
    pub joints: usize,
    pub bars: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowJson {
    pub edge: [usize; 2],
    pub case: String,
    pub alpha: usize,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub vertex: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitMatrixJson {
    pub rows: Vec<RowJson>,
    pub columns: Vec<ColumnJson>,
    pub entries: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub rule: String,
    pub conclusion: String,
    pub hypothesis: String,
    pub values: BTreeMap<String, i64>,
    pub notes: Vec<String>,
    pub certificate: Option<Vec<f64>>,
    pub finite_mechanism: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub reduced: Vec<f64>,
    pub lifted: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificatesJson {
    pub flexes: Vec<CertificateJson>,
    pub stresses: Vec<CertificateJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensegrityJson {
    pub cables: Vec<[usize; 2]>,
    pub struts: Vec<[usize; 2]>,
    /// feasible, infeasible or not-found.
    pub proper_stress: String,
    pub stress: Option<Vec<f64>>,
    pub bar_framework_rigid: bool,
    pub rigid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: Option<String>,
    pub dimension: usize,
    pub vertices: usize,
    pub edges: usize,
    pub group_order: usize,
    pub generic: bool,
    pub counts: CountsJson,
    pub rank: usize,
    pub dims: DimsJson,
    pub fixed: Vec<FixedJson>,
    pub orbit_matrix: OrbitMatrixJson,
    pub verdicts: Vec<VerdictJson>,
    pub certificates: CertificatesJson,
    pub tensegrity: Option<TensegrityJson>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(fw: &SymmetricFramework, a: &AnalysisReport, name: Option<String>, generic: bool) -> Self {
        let graph = fw.graph();
        let one = |e: usize| {
            let (i, j) = graph.edge(e);
            [i + 1, j + 1]
        };
        let om = &a.orbit_matrix;
        let certificates = |list: &[predict::Certificate]| {
            list.iter()
                .map(|c| CertificateJson {
                    reduced: canonical_vector(&c.reduced),
                    lifted: canonical_vector(&c.lifted),
                })
                .collect()
        };
        Report {
            name,
            dimension: fw.dim(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            group_order: fw.group().order(),
            generic,
            counts: CountsJson {
                r: a.counts.r,
                c: a.counts.c,
                m: a.counts.m,
                spanning: a.counts.spanning,
            },
            rank: a.rank.rank,
            dims: DimsJson {
                kernel: a.rank.motions.dim(),
                fully_symmetric_flexes: a.rank.flex_dim,
                fully_symmetric_stresses: a.rank.stresses.dim(),
            },
            fixed: (0..fw.group().order())
                .map(|x| FixedJson {
                    element: fw.group().element(x).label.clone(),
                    joints: a.fixed.joints[x],
                    bars: a.fixed.bars[x],
                })
                .collect(),
            orbit_matrix: OrbitMatrixJson {
                rows: om
                    .rows
                    .iter()
                    .zip(a.orbit_structure.edge_orbits())
                    .map(|(row, orbit)| RowJson {
                        edge: one(orbit.rep_edge),
                        case: row.case.tag().to_string(),
                        alpha: row.alpha,
                        orbit_size: row.orbit_size,
                    })
                    .collect(),
                columns: om
                    .cols
                    .iter()
                    .map(|c| ColumnJson {
                        vertex: c.rep + 1,
                        width: c.width,
                    })
                    .collect(),
                entries: (0..om.matrix.nrows())
                    .map(|r| om.matrix.row(r).iter().map(|&x| round12(x)).collect())
                    .collect(),
            },
            verdicts: a
                .verdicts
                .iter()
                .map(|v| VerdictJson {
                    rule: v.rule.id().to_string(),
                    conclusion: v.conclusion.id().to_string(),
                    hypothesis: v.hypothesis.clone(),
                    values: v.values.iter().cloned().collect(),
                    notes: v.notes.clone(),
                    certificate: v.certificate.as_ref().map(canonical_vector),
                    finite_mechanism: v.finite_mechanism,
                })
                .collect(),
            certificates: CertificatesJson {
                flexes: certificates(&a.flexes),
                stresses: certificates(&a.stresses),
            },
            tensegrity: a.tensegrity.as_ref().map(|t| {
                let members = |kind: predict::MemberKind| {
                    (0..graph.edge_count())
                        .filter(|&e| t.assignment.kind(e) == kind)
                        .map(one)
                        .collect()
                };
                let (label, stress) = match &t.search {
                    StressSearch::Feasible { stress, .. } => ("feasible", Some(signed_unit_vector(stress))),
                    StressSearch::Infeasible => ("infeasible", None),
                    StressSearch::NotFound => ("not-found", None),
                };
                TensegrityJson {
                    cables: members(predict::MemberKind::Cable),
                    struts: members(predict::MemberKind::Strut),
                    proper_stress: label.to_string(),
                    stress,
                    bar_framework_rigid: t.bar_framework_rigid,
                    rigid: t.rigid,
                }
            }),
            warnings: a.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

// ---------------------------------------------------------------- commands

#[derive(Debug, Parser)]
#[command(name = "orbitrig", version, about = "Fully symmetric flexes and self-stresses of symmetric frameworks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the orbit matrix and report flexes, stresses and verdicts.
    Analyze(AnalyzeArgs),
    /// Cone a framework into one dimension higher.
    Cone(ConeArgs),
    /// Print the document of a catalog framework.
    Example(ExampleArgs),
    /// Draw a plane framework as SVG.
    Draw(DrawArgs),
    /// List the catalog frameworks.
    CatalogList,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Framework document (JSON).
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    pub input: Option<PathBuf>,
    /// Use a catalog framework instead of a document.
    #[arg(long)]
    pub example: Option<String>,
    /// Catalog parameters, comma separated.
    #[arg(long, value_delimiter = ',', requires = "example", allow_hyphen_values = true)]
    pub params: Option<Vec<f64>>,
    /// Sets both the relative and the absolute tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also draw the framework with its first flex (plane only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Resample the joints symmetry-generically from the seed first.
    #[arg(long)]
    pub generic: bool,
    /// Look for a proper symmetric self-stress of the document's tensegrity.
    #[arg(long)]
    pub tensegrity: bool,
}

#[derive(Debug, Args)]
pub struct ConeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Height of the apex on the new axis.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub height: f64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    pub name: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Option<Vec<f64>>,
    /// Place the joints symmetry-generically from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    #[command(flatten)]
    pub source: Source,
    /// Draw the first fully symmetric flex as velocity arrows.
    #[arg(long)]
    pub flex: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub generic: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

fn read_document(path: &Path) -> Result<FrameworkDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    FrameworkDocument::from_json(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write output: {e}"))),
    }
}

impl Source {
    pub fn document(&self) -> Result<FrameworkDocument, CliError> {
        match (&self.input, &self.example) {
            (_, Some(name)) => {
                let bp = constructions::catalog_entry(name)?.blueprint(self.params.as_deref())?;
                Ok(FrameworkDocument::from_blueprint(&bp))
            }
            (Some(path), None) => read_document(path),
            (None, None) => Err(CliError::Schema("no framework given".into())),
        }
    }

    fn tolerance(&self, doc: &FrameworkDocument) -> Result<Tolerance, CliError> {
        match self.tolerance.or(doc.tolerance) {
            None => Ok(Tolerance::default()),
            Some(t) => Tolerance::new(t, t).map_err(|_| CliError::Schema(format!("tolerance {t} is not in (0, 1)"))),
        }
    }
}

/// Loads a framework, resampling it when asked. Returns the framework and
/// whether it counts as symmetry-generic.
fn load(source: &Source, generic: bool, seed: u64) -> Result<(FrameworkDocument, SymmetricFramework, bool), CliError> {
    let doc = source.document()?;
    let tol = source.tolerance(&doc)?;
    let mut fw = doc.build(tol)?;
    if generic {
        let config = framework::sample_symmetry_generic(fw.group(), fw.action(), seed, 1.0, &tol)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        fw = fw.with_configuration(config).map_err(|e| CliError::from(ConstructionError::Validation(e)))?;
    }
    let is_generic = generic || doc.generic.unwrap_or(false);
    Ok((doc, fw, is_generic))
}

fn first_flex(a: &AnalysisReport) -> Option<DVector<f64>> {
    a.flexes.first().map(|c| c.lifted.clone())
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (doc, fw, generic) = load(&args.source, args.generic, args.seed)?;
    let tensegrity = if args.tensegrity {
        Some(doc.tensegrity_members()?.unwrap_or_default())
    } else {
        None
    };
    let options = AnalysisOptions { generic, tensegrity };
    let analysis = predict::analyze(&fw, &options)?;
    let drawing = match &args.svg {
        Some(_) => Some(svg::render(&fw, first_flex(&analysis).as_ref())?),
        None => None,
    };
    let report = Report::new(&fw, &analysis, doc.name.clone(), generic);
    emit(out, args.json.as_deref(), &report.to_json())?;
    if let (Some(path), Some(text)) = (&args.svg, drawing) {
        write_file(path, &text)?;
    }
    Ok(())
}

fn cmd_cone(args: &ConeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let doc = args.source.document()?;
    let tol = args.source.tolerance(&doc)?;
    let fw = doc.build(tol)?;
    let coned = constructions::cone(&fw, args.height)?;
    // the named groups keep their conventions in every dimension, so the
    // same symbol describes the extended group
    let group = match &doc.group {
        GroupSpec::Schoenflies { .. } => doc.group.clone(),
        GroupSpec::Generators { .. } => GroupSpec::Generators {
            generators: coned
                .group()
                .generators()
                .iter()
                .map(|&x| matrix_rows(coned.group().matrix(x)))
                .collect(),
            names: Some(
                coned
                    .group()
                    .generators()
                    .iter()
                    .map(|&x| coned.group().element(x).label.clone())
                    .collect(),
            ),
        },
    };
    let name = doc.name.as_ref().map(|n| format!("{n}-cone"));
    let mut result = FrameworkDocument::from_framework(&coned, group, name);
    result.tolerance = doc.tolerance;
    emit(out, args.json.as_deref(), &result.to_json())
}

fn cmd_example(args: &ExampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let bp = constructions::catalog_entry(&args.name)?.blueprint(args.params.as_deref())?;
    let doc = match args.seed {
        None => FrameworkDocument::from_blueprint(&bp),
        Some(seed) => {
            let fw = bp.build_sampled(seed, 1.0, Tolerance::default())?;
            let template = FrameworkDocument::from_blueprint(&bp);
            let mut doc = FrameworkDocument::from_framework(&fw, template.group, template.name);
            doc.generic = Some(true);
            doc
        }
    };
    emit(out, args.json.as_deref(), &doc.to_json())
}

fn cmd_draw(args: &DrawArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, fw, generic) = load(&args.source, args.generic, args.seed)?;
    if fw.dim() != 2 {
        return Err(SvgError::Unsupported(fw.dim()).into());
    }
    let motion = if args.flex {
        let options = AnalysisOptions { generic, tensegrity: None };
        first_flex(&predict::analyze(&fw, &options)?)
    } else {
        None
    };
    let text = svg::render(&fw, motion.as_ref())?;
    emit(out, args.svg.as_deref(), &text)
}

fn cmd_catalog_list(out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = String::new();
    for name in constructions::catalog_names() {
        let entry = constructions::catalog_entry(name)?;
        let params: Vec<String> = entry.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        text.push_str(&format!("{:<22} {}", entry.name, entry.summary));
        if !params.is_empty() {
            text.push_str(&format!(" [{}]", params.join(", ")));
        }
        text.push('\n');
    }
    emit(out, None, &text)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Cone(a) => cmd_cone(a, out),
        Command::Example(a) => cmd_example(a, out),
        Command::Draw(a) => cmd_draw(a, out),
        Command::CatalogList => cmd_catalog_list(out),
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Validation { details, .. } = &e {
                for d in details {
                    let _ = writeln!(err, "  - {d}");
                }
            }
            e.exit_code()
        }
    }
}

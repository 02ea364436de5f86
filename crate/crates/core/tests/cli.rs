use std::path::Path;
use std::process::{Command, Output};

use orbit_rigidity::cli::{ActionSpec, ConfigurationSpec, FrameworkDocument, GroupSpec, Report, TensegritySpec};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn orbitrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitrig")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn document(args: &[&str]) -> FrameworkDocument {
    FrameworkDocument::from_json(&stdout(&orbitrig(args))).unwrap()
}

fn write(dir: &Path, name: &str, doc: &FrameworkDocument) -> String {
    let path = dir.join(name);
    std::fs::write(&path, doc.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn analyze(path: &str, extra: &[&str]) -> Report {
    let mut args = vec!["analyze", path];
    args.extend_from_slice(extra);
    serde_json::from_str(&stdout(&orbitrig(&args))).unwrap()
}

#[test]
fn catalog_list_names_every_entry() {
    let text = stdout(&orbitrig(&["catalog-list"]));
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().any(|l| l.starts_with("k66-c3h ")));
}

#[test]
fn example_round_trip_gives_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let doc = document(&["example", "k66-c3h"]);
    let path = write(dir.path(), "k66.json", &doc);
    let from_file = stdout(&orbitrig(&["analyze", &path]));
    let from_catalog = stdout(&orbitrig(&["analyze", "--example", "k66-c3h"]));
    assert_eq!(from_file, from_catalog);
    let report: Report = serde_json::from_str(&from_file).unwrap();
    assert_eq!((report.counts.r, report.counts.c, report.counts.m), (6, 6, 1));
    assert_eq!(report.dims.fully_symmetric_stresses, 2);
}

#[test]
fn mirror_octahedron_is_certified_by_counting() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "o.json", &document(&["example", "octahedron-cs"]));
    let report = analyze(&path, &["--generic", "--seed", "4"]);
    assert!(report.dims.fully_symmetric_flexes >= 1);
    let rule = report.verdicts.iter().find(|v| v.rule == "thm-3d-cs").unwrap();
    assert_eq!(rule.conclusion, "flex-certified");
    assert!(rule.finite_mechanism);
    assert_eq!(rule.values["j_s"], 2);
    assert_eq!(rule.values["b_s"], 0);
}

#[test]
fn coning_through_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let octa = write(dir.path(), "o.json", &document(&["example", "octahedron-c2"]));
    let once = document(&["cone", &octa, "--height", "1.5"]);
    assert_eq!((once.dimension, once.vertices, once.edges.len()), (4, 7, 18));
    let once_path = write(dir.path(), "o1.json", &once);
    let report = analyze(&once_path, &[]);
    assert_eq!((report.counts.r, report.counts.c, report.counts.m), (9, 14, 4));

    let twice = document(&["cone", &once_path, "--height", "2"]);
    assert_eq!(twice.dimension, 5);
    assert!(twice.edges.contains(&[7, 8]));
}

#[test]
fn coning_a_lone_joint_gives_one_bar() {
    let dir = tempfile::tempdir().unwrap();
    let doc = FrameworkDocument {
        name: None,
        dimension: 1,
        vertices: 1,
        edges: vec![],
        group: GroupSpec::Schoenflies {
            schoenflies: "C1".into(),
            order: None,
        },
        action: ActionSpec::Generators { generators: vec![] },
        configuration: ConfigurationSpec::Full { full: vec![vec![0.0]] },
        tensegrity: None,
        tolerance: None,
        generic: None,
    };
    let path = write(dir.path(), "one.json", &doc);
    let coned = document(&["cone", &path]);
    assert_eq!((coned.vertices, coned.edges.clone()), (2, vec![[1, 2]]));
}

#[test]
fn explicit_generator_matrices_work_like_names() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = document(&["example", "k22-c2"]);
    doc.group = GroupSpec::Generators {
        generators: vec![vec![vec![-1.0, 0.0], vec![0.0, -1.0]]],
        names: None,
    };
    let path = write(dir.path(), "k22.json", &doc);
    let report = analyze(&path, &[]);
    assert_eq!((report.counts.r, report.counts.c, report.counts.m), (2, 4, 1));
    assert_eq!(report.dims.fully_symmetric_flexes, 1);
}

#[test]
fn broken_and_malformed_documents() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = document(&["example", "k22-c2"]);
    doc.action = ActionSpec::Generators {
        generators: vec![vec![3, 3, 1, 2]],
    };
    let path = write(dir.path(), "broken.json", &doc);
    let out = orbitrig(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a permutation"));

    let mut doc = document(&["example", "k22-c2"]);
    doc.configuration = ConfigurationSpec::Full {
        full: vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![-1.0, -2.0], vec![-3.0, -4.5]],
    };
    let path = write(dir.path(), "asym.json", &doc);
    let out = orbitrig(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("joint 2"));

    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{\"dimension\": 2}").unwrap();
    assert_eq!(orbitrig(&["analyze", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(orbitrig(&["analyze", "/nonexistent/x.json"]).status.code(), Some(1));
    assert_eq!(orbitrig(&["example", "k22-c2", "--params", "1,2"]).status.code(), Some(1));
}

#[test]
fn reports_survive_relabeling() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["k66-c3h", "cube-c2v", "crosspolytope4d-c2v", "octahedron-cs"] {
        let doc = document(&["example", name, "--seed", "5"]);
        let base = analyze(&write(dir.path(), "a.json", &doc), &[]);
        let n = doc.vertices;
        let mut pi: Vec<usize> = (1..=n).collect();
        pi.shuffle(&mut rng);
        let map = |v: usize| pi[v - 1];
        let mut other = doc.clone();
        other.edges = doc.edges.iter().map(|&[i, j]| [map(i), map(j)]).collect();
        let ActionSpec::Generators { generators } = &doc.action else { unreachable!() };
        other.action = ActionSpec::Generators {
            generators: generators
                .iter()
                .map(|g| {
                    let mut h = vec![0; n];
                    for v in 1..=n {
                        h[map(v) - 1] = map(g[v - 1]);
                    }
                    h
                })
                .collect(),
        };
        let ConfigurationSpec::Full { full } = &doc.configuration else { unreachable!() };
        let mut moved = full.clone();
        for v in 1..=n {
            moved[map(v) - 1] = full[v - 1].clone();
        }
        other.configuration = ConfigurationSpec::Full { full: moved };
        let relabeled = analyze(&write(dir.path(), "b.json", &other), &[]);
        assert_eq!(base.counts, relabeled.counts, "{name}");
        assert_eq!(base.rank, relabeled.rank, "{name}");
        assert_eq!(base.dims, relabeled.dims, "{name}");
    }
}

#[test]
fn tensegrity_section_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = document(&["example", "cube-c4v"]);
    doc.tensegrity = Some(TensegritySpec {
        cables: vec![[5, 6], [6, 7], [7, 8], [5, 8], [1, 5], [2, 6], [3, 7], [4, 8]],
        struts: vec![],
    });
    let path = write(dir.path(), "web.json", &doc);
    let report = analyze(&path, &["--tensegrity"]);
    let t = report.tensegrity.unwrap();
    assert_eq!(t.proper_stress, "feasible");
    assert!(!t.bar_framework_rigid);
    assert!(!t.rigid);
    let stress = t.stress.unwrap();
    assert!(stress.iter().filter(|w| **w > 0.0).count() >= 8);

    // cables on half of an orbit
    doc.tensegrity = Some(TensegritySpec {
        cables: vec![[5, 6]],
        struts: vec![],
    });
    let path = write(dir.path(), "bad.json", &doc);
    assert_eq!(orbitrig(&["analyze", &path, "--tensegrity"]).status.code(), Some(2));
}

#[test]
fn drawing() {
    let svg = stdout(&orbitrig(&["draw", "--example", "k22-cs-a", "--flex"]));
    assert_eq!(svg.matches(r#"class="joint""#).count(), 4);
    assert_eq!(svg.matches(r#"class="bar""#).count(), 4);
    assert_eq!(svg.matches(r#"class="mirror""#).count(), 1);
    assert!(svg.matches(r#"class="velocity""#).count() >= 3);
    let plain = stdout(&orbitrig(&["draw", "--example", "k22-cs-a"]));
    assert_eq!(plain.matches(r#"class="velocity""#).count(), 0);
    assert_eq!(orbitrig(&["draw", "--example", "k66-c3h"]).status.code(), Some(2));
}

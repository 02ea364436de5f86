//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use nalgebra::{DMatrix, DVector};
use orbit_rigidity::constructions::{catalog, catalog_names, cone};
use orbit_rigidity::framework::{self, Action, Graph, OrbitStructure, SymmetricFramework};
use orbit_rigidity::linalg::{self, SubspaceBasis, Tolerance};
use orbit_rigidity::orbit::{self, OrbitMatrix};
use orbit_rigidity::predict::{self, AnalysisOptions, MemberKind, StressSearch, TensegrityAssignment};
use orbit_rigidity::rigidity;
use orbit_rigidity::symmetry::{build_group, SchoenfliesKind, SchoenfliesSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ENTRY_TOL: f64 = 1e-12;
const SUBSPACE_TOL: f64 = 1e-8;
const WITNESS_TOL: f64 = 1e-9;
const SAMPLES: u64 = 25;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parts(fw: &SymmetricFramework) -> (OrbitStructure, OrbitMatrix) {
    let os = fw.orbit_structure().expect("orbit structure");
    let om = orbit::orbit_matrix(fw, &os);
    (os, om)
}

fn span(vectors: &[DVector<f64>], ambient: usize) -> SubspaceBasis {
    if vectors.is_empty() {
        return SubspaceBasis::empty(ambient);
    }
    let m = DMatrix::from_columns(vectors);
    linalg::column_space(&m, &Tolerance::default()).expect("column space")
}

fn same_subspace(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<f64, String> {
    if a.dim() != b.dim() {
        return Err(format!("dimensions {} vs {}", a.dim(), b.dim()));
    }
    let res = a.projection_residual(b).max(b.projection_residual(a));
    if res > SUBSPACE_TOL {
        return Err(format!("cross-projection residual {res:.2e}"));
    }
    Ok(res)
}

fn c1_entries() -> Outcome {
    let (a, b, c, d) = (1.0, 2.0, 3.0, 4.0);
    let cases: [(&str, Vec<Vec<f64>>); 3] = [
        (
            "k22-c2",
            vec![vec![a - c, b - d, c - a, d - b], vec![a + c, b + d, c + a, d + b]],
        ),
        ("k22-cs-a", vec![vec![a, b - c, c - b, 0.0], vec![a, b - d, 0.0, d - b]]),
        (
            "k22-cs-b",
            vec![
                vec![a - c, b - d, c - a, d - b],
                vec![4.0 * a, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 4.0 * c, 0.0],
            ],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (name, rows) in cases {
        let fw = catalog(name, Some(&[a, b, c, d]), None).map_err(|e| e.to_string())?;
        let (_, om) = parts(&fw);
        let want = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
        ensure(om.matrix.shape() == want.shape(), || {
            format!("{name}: shape {:?} vs {:?}", om.matrix.shape(), want.shape())
        })?;
        let err = (&om.matrix - &want).amax();
        ensure(err <= ENTRY_TOL, || format!("{name}: entry error {err:.2e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("3 matrices, max entry error {worst:.1e} (tol {ENTRY_TOL:.0e})"))
}

fn c2_kernel() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for name in catalog_names() {
        for seed in 0..SAMPLES {
            let fw = catalog(name, None, Some(seed)).map_err(|e| format!("{name}/{seed}: {e}"))?;
            let (os, om) = parts(&fw);
            let tol = fw.tol();
            let reduced = orbit::reduced_motions(&om, tol).map_err(|e| e.to_string())?;
            let lifted: Vec<DVector<f64>> = reduced
                .vectors()
                .map(|v| orbit::lift_motion(&fw, &os, &v).expect("lift"))
                .collect();
            let ours = span(&lifted, fw.dim() * fw.graph().vertex_count());
            let oracle = rigidity::symmetric_motion_space(&fw).map_err(|e| e.to_string())?;
            worst = worst.max(same_subspace(&ours, &oracle).map_err(|e| format!("{name}/{seed}: {e}"))?);
            checked += 1;
        }
    }
    Ok(format!("{checked} frameworks, max residual {worst:.1e} (tol {SUBSPACE_TOL:.0e})"))
}

fn c3_cokernel() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for name in catalog_names() {
        for seed in 0..SAMPLES {
            let fw = catalog(name, None, Some(seed)).map_err(|e| format!("{name}/{seed}: {e}"))?;
            let (os, om) = parts(&fw);
            let reduced = orbit::reduced_stresses(&om, fw.tol()).map_err(|e| e.to_string())?;
            let lifted: Vec<DVector<f64>> = reduced
                .vectors()
                .map(|v| orbit::lift_stress(&fw, &os, &om, &v).expect("lift"))
                .collect();
            let ours = span(&lifted, fw.graph().edge_count());
            let oracle = rigidity::symmetric_stress_space(&fw).map_err(|e| e.to_string())?;
            worst = worst.max(same_subspace(&ours, &oracle).map_err(|e| format!("{name}/{seed}: {e}"))?);
            checked += 1;
        }
    }
    Ok(format!("{checked} frameworks, max residual {worst:.1e} (tol {SUBSPACE_TOL:.0e})"))
}

fn c4_counts() -> Outcome {
    let table = [
        ("k22-c2", (2, 4, 1)),
        ("k22-cs-a", (2, 4, 1)),
        ("k22-cs-b", (3, 4, 1)),
        ("octahedron-c2", (6, 9, 2)),
        ("octahedron-cs", (6, 10, 3)),
        ("crosspolytope4d-c2v", (8, 12, 3)),
        ("k44-c2v-phi", (4, 4, 0)),
        ("k44-c2v-psi", (4, 4, 0)),
        ("k66-c3h", (6, 6, 1)),
        ("cube-c2", (6, 8, 1)),
        ("cube-c2v", (4, 4, 0)),
        ("cube-c4v", (3, 2, 0)),
    ];
    for (name, want) in table {
        let fw = catalog(name, None, None).map_err(|e| e.to_string())?;
        let c = predict::counts(&fw).map_err(|e| e.to_string())?;
        ensure((c.r, c.c, c.m) == want, || format!("{name}: got {:?}, want {want:?}", (c.r, c.c, c.m)))?;
    }
    Ok(format!("{} entries exact", table.len()))
}

fn c5_rank() -> Outcome {
    let mut found = Vec::new();
    for name in ["k44-c2v-phi", "k44-c2v-psi", "k66-c3h"] {
        let fw = catalog(name, None, None).map_err(|e| e.to_string())?;
        let report = predict::analyze(&fw, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        let c = report.counts;
        ensure(c.r + c.m >= c.c, || format!("{name}: r < c - m, counting alone would decide"))?;
        ensure(report.rank.flex_dim >= 1, || format!("{name}: no flex found"))?;
        found.push(format!("{name}={}", report.rank.flex_dim));
    }
    for seed in 0..SAMPLES {
        let fw = catalog("k22-cs-b", None, Some(seed)).map_err(|e| e.to_string())?;
        let report = predict::analyze(&fw, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.rank.flex_dim == 0, || format!("k22-cs-b seed {seed}: flex dim {}", report.rank.flex_dim))?;
    }
    Ok(format!("flex dims {}; k22-cs-b rigid at {SAMPLES} samples", found.join(", ")))
}

fn c6_witnesses() -> Outcome {
    let check = |name: &str, witnesses: &[Vec<f64>]| -> Result<f64, String> {
        let fw = catalog(name, None, None).map_err(|e| e.to_string())?;
        let (_, om) = parts(&fw);
        let norm = linalg::spectral_norm(&om.matrix).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for w in witnesses {
            let w = DVector::from_vec(w.clone());
            let res = (om.matrix.transpose() * &w).norm() / w.norm();
            ensure(res <= WITNESS_TOL * norm, || format!("{name}: residual {res:.2e} vs ‖O‖ {norm:.2e}"))?;
            worst = worst.max(res / norm);
        }
        Ok(worst)
    };
    let a = check("k44-c2v-phi", &[vec![1.0, -1.0, 1.0, -1.0]])?;
    let b = check(
        "k66-c3h",
        &[vec![0.0, 1.0, -1.0, 0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0, -1.0, 0.0, 1.0]],
    )?;
    Ok(format!("relative residuals {a:.1e}, {b:.1e} (tol {WITNESS_TOL:.0e}·‖O‖)"))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Free pairs swapped by the involution, complete graph, joints sampled.
fn involution_framework(kind: SchoenfliesKind, d: usize, seed: u64) -> SymmetricFramework {
    let group = build_group(SchoenfliesSpec { kind, dim: d }).expect("group");
    let pairs = d + 1;
    let n = 2 * pairs;
    let swap: Vec<usize> = (0..n).map(|v| v ^ 1).collect();
    let action = Action::from_generators(&group, n, &[swap]).expect("action");
    let tol = Tolerance::default();
    let config = framework::sample_symmetry_generic(&group, &action, seed, 1.0, &tol).expect("sample");
    SymmetricFramework::validate(Graph::complete(n), config, group, action, tol).expect("valid")
}

fn c7_mobility() -> Outcome {
    let mut checked = 0;
    for d in 2..=6 {
        for seed in 0..10 {
            for (kind, want) in [
                (SchoenfliesKind::Cyclic(2), 1 + binom(d - 1, 2)),
                (SchoenfliesKind::Cs, binom(d, 2)),
            ] {
                let fw = involution_framework(kind, d, seed);
                ensure(fw.config().affinely_spans(fw.tol()), || format!("{kind} d={d} seed {seed}: not spanning"))?;
                let c = predict::counts(&fw).map_err(|e| e.to_string())?;
                ensure(c.m == want, || format!("{kind} d={d} seed {seed}: m={} want {want}", c.m))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases, d = 2..6"))
}

fn c8_coning() -> Outcome {
    let base = catalog("octahedron-c2", None, None).map_err(|e| e.to_string())?;
    let once = cone(&base, 1.5).map_err(|e| e.to_string())?;
    let c = predict::counts(&once).map_err(|e| e.to_string())?;
    ensure((c.r, c.c, c.m) == (9, 14, 4), || format!("coned octahedron: {:?}", (c.r, c.c, c.m)))?;
    ensure(c.r + 1 == c.c - c.m, || "coned octahedron: r != c - m - 1".into())?;
    let mut fw = base;
    let heights = [1.5, 2.25, 3.0];
    for (d, h) in (4..=6).zip(heights) {
        fw = cone(&fw, h).map_err(|e| e.to_string())?;
        let c = predict::counts(&fw).map_err(|e| e.to_string())?;
        let want = (
            6 + 3 * (d - 3) + binom(d - 3, 2),
            3 * d + (d - 2) * (d - 3),
            1 + binom(d - 1, 2),
        );
        ensure((c.r, c.c, c.m) == want, || format!("d={d}: got {:?}, want {want:?}", (c.r, c.c, c.m)))?;
        ensure(c.r + 1 == c.c - c.m, || format!("d={d}: r != c - m - 1"))?;
    }
    Ok("(9,14,4) and repeated cones for d = 4, 5, 6".into())
}

/// A random graph with a mirror symmetry and exactly `target(n)` edges.
fn random_mirror_framework(d: usize, rng: &mut ChaCha8Rng, target: impl Fn(usize) -> usize) -> SymmetricFramework {
    let group = build_group(SchoenfliesSpec {
        kind: SchoenfliesKind::Cs,
        dim: d,
    })
    .expect("group");
    let tol = Tolerance::default();
    loop {
        let k = rng.random_range(2..=4);
        let j = rng.random_range(0..=3);
        let n = 2 * k + j;
        let s: Vec<usize> = (0..n).map(|v| if v < 2 * k { v ^ 1 } else { v }).collect();
        let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut seen = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let (a, b) = (s[u].min(s[v]), s[u].max(s[v]));
                seen.insert((u, v));
                seen.insert((a, b));
                orbits.push(if (a, b) == (u, v) { vec![(u, v)] } else { vec![(u, v), (a, b)] });
            }
        }
        let want = target(n);
        orbits.shuffle(rng);
        let mut edges = Vec::new();
        for o in &orbits {
            if edges.len() + o.len() <= want {
                edges.extend(o.iter().copied());
            }
        }
        if edges.len() != want {
            continue;
        }
        let action = Action::from_generators(&group, n, &[s]).expect("action");
        let seed = rng.random();
        let Ok(config) = framework::sample_symmetry_generic(&group, &action, seed, 1.0, &tol) else {
            continue;
        };
        let graph = Graph::new(n, &edges).expect("graph");
        match SymmetricFramework::validate(graph, config, group.clone(), action, tol) {
            Ok(fw) if fw.config().affinely_spans(&tol) => return fw,
            _ => continue,
        }
    }
}

fn c9_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut shapes = BTreeSet::new();
    for _ in 0..20 {
        let fw = random_mirror_framework(3, &mut rng, |n| 3 * n - 6);
        let c = predict::counts(&fw).map_err(|e| e.to_string())?;
        let f = fw.fixed_counts();
        let (r, cc, m) = (c.r as i64, c.c as i64, c.m as i64);
        let (js, bs) = (f.joints[1] as i64, f.bars[1] as i64);
        ensure(2 * r == 2 * cc + bs - js - 2 * m, || {
            format!("3D: r={r} c={cc} m={m} j_s={js} b_s={bs}")
        })?;
        shapes.insert((3, fw.graph().vertex_count(), js, bs));
    }
    for _ in 0..20 {
        let fw = random_mirror_framework(2, &mut rng, |n| 2 * n - 4);
        let c = predict::counts(&fw).map_err(|e| e.to_string())?;
        let f = fw.fixed_counts();
        let (r, cc, m) = (c.r as i64, c.c as i64, c.m as i64);
        let bs = f.bars[1] as i64;
        ensure(2 * r == 2 * cc - 2 * m + bs - 2, || format!("2D: r={r} c={cc} m={m} b_s={bs}"))?;
        shapes.insert((2, fw.graph().vertex_count(), f.joints[1] as i64, bs));
    }
    Ok(format!("40 random graphs, {} distinct (d, n, j_s, b_s)", shapes.len()))
}

fn random_orthogonal(k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(k, k, |_, _| rng.random_range(-1.0..1.0));
    a.qr().q()
}

fn c10_basis_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    for name in catalog_names() {
        let fw = catalog(name, None, None).map_err(|e| e.to_string())?;
        let tol = fw.tol();
        let (os, om) = parts(&fw);
        let rank = om.rank(tol).map_err(|e| e.to_string())?;
        let coker = orbit::reduced_stresses(&om, tol).map_err(|e| e.to_string())?.dim();
        for trial in 0..10 {
            let bases: Vec<SubspaceBasis> = os
                .joint_bases()
                .iter()
                .map(|b| {
                    let q = random_orthogonal(b.dim(), &mut rng);
                    SubspaceBasis::from_columns(b.matrix() * q, 1e-10).expect("orthonormal")
                })
                .collect();
            let rebased = os.with_joint_bases(bases, 1e-10).ok_or("rebase rejected")?;
            let om2 = orbit::orbit_matrix(&fw, &rebased);
            let rank2 = om2.rank(tol).map_err(|e| e.to_string())?;
            let coker2 = orbit::reduced_stresses(&om2, tol).map_err(|e| e.to_string())?.dim();
            ensure((rank2, coker2) == (rank, coker), || {
                format!("{name} trial {trial}: ({rank2},{coker2}) vs ({rank},{coker})")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} re-bases"))
}

fn c11_tensegrity() -> Outcome {
    // cube with square symmetry: inner square and spokes are cables
    let fw = catalog("cube-c4v", None, None).map_err(|e| e.to_string())?;
    let (os, om) = parts(&fw);
    let cables = [(4, 5), (5, 6), (6, 7), (4, 7), (0, 4), (1, 5), (2, 6), (3, 7)];
    let web = TensegrityAssignment::from_members(&fw, &os, &cables, &[]).map_err(|e| e.to_string())?;
    let search = predict::proper_stress_check(&fw, &os, &om, &web).map_err(|e| e.to_string())?;
    ensure(matches!(search, StressSearch::Feasible { .. }), || format!("cube-c4v: {search:?}"))?;

    // K44 with cables and struts alternating over the four bar orbits
    let fw = catalog("k44-c2v-phi", None, None).map_err(|e| e.to_string())?;
    let (os, om) = parts(&fw);
    let mut kinds = vec![MemberKind::Bar; fw.graph().edge_count()];
    for (i, orbit) in os.edge_orbits().iter().enumerate() {
        for &e in &orbit.edges {
            kinds[e] = if i % 2 == 0 { MemberKind::Cable } else { MemberKind::Strut };
        }
    }
    let pattern = TensegrityAssignment::new(&fw, &os, kinds).map_err(|e| e.to_string())?;
    let search = predict::proper_stress_check(&fw, &os, &om, &pattern).map_err(|e| e.to_string())?;
    ensure(matches!(search, StressSearch::Feasible { .. }), || format!("k44-c2v-phi: {search:?}"))?;

    // symmetrizing any self-stress lands among the fully symmetric ones
    let r = rigidity::rigidity_matrix(fw.graph(), fw.config()).map_err(|e| e.to_string())?;
    let all = linalg::left_nullspace(&r, fw.tol()).map_err(|e| e.to_string())?;
    let reduced = orbit::reduced_stresses(&om, fw.tol()).map_err(|e| e.to_string())?;
    let lifted: Vec<DVector<f64>> = reduced
        .vectors()
        .map(|v| orbit::lift_stress(&fw, &os, &om, &v).expect("lift"))
        .collect();
    let symmetric = span(&lifted, fw.graph().edge_count());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let coeffs = DVector::from_fn(all.dim(), |_, _| rng.random_range(-1.0..1.0));
        let w = all.matrix() * coeffs;
        let s = predict::symmetrize_stress(&fw, &w).map_err(|e| e.to_string())?;
        let res = symmetric.distance(&s) / s.norm().max(1e-300);
        ensure(res <= SUBSPACE_TOL, || format!("symmetrized stress residual {res:.2e}"))?;
        worst = worst.max(res);
    }
    Ok(format!(
        "both proper stresses found; symmetrized residual {worst:.1e} over {} self-stresses (tol {SUBSPACE_TOL:.0e})",
        all.dim()
    ))
}

fn c12_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_orbitrig");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let doc = dir.path().join("k44.json");
    let status = Command::new(exe)
        .args(["example", "k44-c2v-psi", "--json"])
        .arg(&doc)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || "example failed".into())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let json = dir.path().join(format!("report{run}.json"));
        let svg = dir.path().join(format!("figure{run}.svg"));
        let status = Command::new(exe)
            .arg("analyze")
            .arg(&doc)
            .args(["--generic", "--seed", "7", "--tensegrity", "--json"])
            .arg(&json)
            .arg("--svg")
            .arg(&svg)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("analyze run {run} failed"))?;
        outputs.push((std::fs::read(&json).unwrap(), std::fs::read(&svg).unwrap()));
    }
    ensure(outputs[0].0 == outputs[1].0, || "JSON reports differ".into())?;
    ensure(outputs[0].1 == outputs[1].1, || "SVG drawings differ".into())?;
    ensure(outputs[0].1.windows(8).any(|w| w == b"velocity"), || "SVG has no flex arrows".into())?;
    Ok(format!(
        "{} JSON bytes and {} SVG bytes identical",
        outputs[0].0.len(),
        outputs[0].1.len()
    ))
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("orbit-matrix entries", c1_entries),
        ("kernel characterization", c2_kernel),
        ("cokernel characterization", c3_cokernel),
        ("counting table", c4_counts),
        ("rank-based detection", c5_rank),
        ("left-kernel witnesses", c6_witnesses),
        ("closed-form mobility", c7_mobility),
        ("coning arithmetic", c8_coning),
        ("counting identities", c9_identities),
        ("basis invariance", c10_basis_invariance),
        ("tensegrity", c11_tensegrity),
        ("cli determinism", c12_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

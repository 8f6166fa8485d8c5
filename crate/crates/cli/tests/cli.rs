use std::path::Path;
use std::process::{Command, Output};

use repdecomp::sdp::parse_sdpa;
use repdecomp_cli::{parse_group_spec, parse_rep};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_repdecomp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// `S_4` permuting four points, written by hand.
fn defining_s4() -> String {
    let perm = |images: [usize; 4]| {
        let entries: Vec<i64> = (0..16).map(|k| i64::from(images[k / 4] == k % 4)).collect();
        serde_json::json!({"rows": 4, "cols": 4, "entries": entries})
    };
    serde_json::json!({
        "cyclotomic_order": 1,
        "group": {"degree": 4, "generators": [[2, 1, 3, 4], [2, 3, 4, 1]]},
        "degree": 4,
        "images": [perm([1, 0, 2, 3]), perm([1, 2, 3, 0])],
    })
    .to_string()
}

fn random_rep_file(dir: &Path, seed: u64, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.join(format!("rep{seed}.json"));
    let seed = seed.to_string();
    let mut args = vec!["--seed", &seed, "--no-timing", "random-rep", "-o", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn random_reps_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let path = random_rep_file(dir.path(), seed, &[]);
        let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let rep = parse_rep(&path).unwrap();
        let back = serde_json::to_value(rep.to_json()).unwrap();
        for key in ["group", "degree", "images", "cyclotomic_order"] {
            assert_eq!(file[key], back[key], "seed {seed}, field {key}");
        }
    }
}

#[test]
fn missing_field_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = random_rep_file(dir.path(), 3, &[]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("images");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["decompose", "--rep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("images"), "{err}");
    assert!(err.contains(path.to_str().unwrap()), "{err}");
}

#[test]
fn wrong_dimensions_name_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = random_rep_file(dir.path(), 1, &["--group", "S4"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let first = v["images"][0]["entries"][0].clone();
    v["images"][1] = serde_json::json!({"rows": 1, "cols": 1, "entries": [first]});
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["decompose", "--rep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("generator 1"), "{err}");
}

#[test]
fn decompositions_match_construction() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [2u64, 5, 11] {
        let path = random_rep_file(dir.path(), seed, &[]);
        let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mut expected: Vec<(u64, u64)> = file["construction"]["constituents"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["irrep"].as_u64().unwrap(), c["multiplicity"].as_u64().unwrap()))
            .collect();
        expected.sort();
        for method in ["serre", "alternate"] {
            let v = stdout_json(&run(&["decompose", "--rep", path.to_str().unwrap(), "--method", method]));
            let mut got: Vec<(u64, u64)> = v["irreps"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|r| r["multiplicity"].as_u64().unwrap() > 0)
                .map(|r| (r["index"].as_u64().unwrap(), r["multiplicity"].as_u64().unwrap()))
                .collect();
            got.sort();
            assert_eq!(got, expected, "seed {seed}, {method}");
            let total: u64 = v["dimensions"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).sum();
            assert_eq!(total, file["degree"].as_u64().unwrap());
            if method == "alternate" {
                assert!(v["intertwiner"]["a"].is_object());
            }
        }
    }
}

#[test]
fn random_rep_is_reproducible() {
    let a = run(&["random-rep", "--seed", "7", "--no-timing"]);
    let b = run(&["--no-timing", "--seed", "7", "random-rep"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 7);
    assert!(v["meta"]["timing"].is_null());
    let timed: Value = serde_json::from_slice(&run(&["random-rep", "--seed", "7"]).stdout).unwrap();
    assert!(timed["meta"]["timing"]["nanos"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["decompose"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--rep", "/nonexistent/rep.json"]).status.code(), Some(2));
    assert_eq!(run(&["orbitals", "--group", "Q8"]).status.code(), Some(2));
    // a rep that is not a permutation representation
    let dir = tempfile::tempdir().unwrap();
    let path = random_rep_file(dir.path(), 4, &["--group", "S3"]);
    let out = run(&["orbitals", "--rep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn crossing_without_solver() {
    let dir = tempfile::tempdir().unwrap();
    let sdpa = dir.path().join("m5.dat-s");
    let v = stdout_json(&run(&["crossing", "--m", "5", "--sdpa", sdpa.to_str().unwrap()]));
    assert_eq!(v["d"], 7);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["cycles"], 24);
    assert_eq!(v["solver_status"], "not run");
    assert!(v["alpha"].is_null());
    let p = parse_sdpa(&std::fs::read_to_string(&sdpa).unwrap()).unwrap();
    assert_eq!(p.m, 7);
    assert_eq!(p.block_sizes[0], 8);

    let v = stdout_json(&run(&["crossing", "--m", "5", "--no-merge"]));
    assert_eq!(v["d"], 8);

    let out = run(&["crossing", "--m", "5", "--solve", "--solver", "no-such-solver-binary"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not found"));
    assert_eq!(run(&["crossing", "--m", "9"]).status.code(), Some(1));
}

#[test]
fn centralizer_routes() {
    let dir = tempfile::tempdir().unwrap();
    let path = random_rep_file(dir.path(), 9, &["--group", "D8"]);
    let p = path.to_str().unwrap();
    let v = stdout_json(&run(&["centralizer", "--rep", p]));
    assert_eq!(v["method"], "decomposition");
    let blocks = stdout_json(&run(&["centralizer", "--rep", p, "--blocks"]));
    assert_eq!(blocks["dimension"], v["dimension"]);
    assert_eq!(blocks["star_closed"], true);
    let perm = dir.path().join("perm.json");
    std::fs::write(&perm, defining_s4()).unwrap();
    let orb = stdout_json(&run(&["centralizer", "--rep", perm.to_str().unwrap()]));
    assert_eq!(orb["method"], "orbital");
    assert_eq!(orb["dimension"], 2);
    assert_eq!(orb["orthonormal"], true);
    assert_eq!(run(&["centralizer", "--rep", p, "--via", "orbital"]).status.code(), Some(1));
}

#[test]
fn bench_respects_transversal_bound() {
    let out = run(&["--no-timing", "bench", "--groups", "S4,C12,D10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), "strategy,group,degree,images_computed,ring_ops,nanos");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for spec in ["S4", "C12", "D10"] {
        let (_, pg) = parse_group_spec(spec).unwrap();
        let chain = pg.chain();
        let bound = chain.levels().iter().map(|l| l.len()).sum::<usize>() + chain.strong_generators().len();
        let row = rows.iter().find(|r| r[0] == "chain" && r[1] == spec).unwrap();
        assert!(row[3].parse::<usize>().unwrap() <= bound, "{spec}: {row:?}");
        let naive = rows.iter().find(|r| r[0] == "naive" && r[1] == spec).unwrap();
        assert_eq!(naive[3].parse::<u128>().unwrap(), pg.order());
    }
}

#[test]
fn selftest_passes() {
    let v = stdout_json(&run(&["selftest"]));
    assert_eq!(v["passed"], true);
}

#[test]
fn unitarize_and_block_diagonalize() {
    let dir = tempfile::tempdir().unwrap();
    let refused = random_rep_file(dir.path(), 6, &["--group", "S3"]);
    let out = run(&["unitarize", "--rep", refused.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cyclotomic order"));
    let path = random_rep_file(dir.path(), 7, &["--group", "S3"]);
    let p = path.to_str().unwrap();
    let u = stdout_json(&run(&["unitarize", "--rep", p]));
    let tau = dir.path().join("tau.json");
    std::fs::write(&tau, u["tau"].to_string()).unwrap();
    assert!(parse_rep(&tau).unwrap().is_unitary());
    let b = stdout_json(&run(&["block-diagonalize", "--rep", p, "--strategy", "orbit"]));
    assert_eq!(b["strategy"], "orbit");
    assert!(b["layout"].as_array().unwrap().iter().all(|e| e["degree"].as_u64().unwrap() >= 1));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const LOOP: &str = "vertex x\narrow a: x -> x\n";
const TWO_LOOPS: &str = "vertex x\narrow a: x -> x\narrow b: x -> x\n";
const A2: &str = "vertex x\nvertex y\narrow a: x -> y\n";
const A3: &str = "vertex x\nvertex y\nvertex z\narrow a: x -> y\narrow b: y -> z\n";
const KRONECKER: &str = "vertex x\nvertex y\narrow a: x -> y\narrow b: x -> y\n";
const ISOLATED: &str = "# a single vertex\nvertex x\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, contents).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effdim"))
        .args(args)
        .output()
        .unwrap()
}

fn run_on(path: &Path, cmd: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_examples() {
    let f = Fixture::new();
    let o = run_on(
        &f.file("loop.quiver", LOOP),
        "analyze",
        &["--truncate", "5"],
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("eff.dim(P_5) = 5"), "{}", stdout(&o));

    let o = run_on(&f.file("a3.quiver", A3), "analyze", &["--truncate", "2"]);
    assert!(stdout(&o).contains("eff.dim(P_2) = 4"));

    let o = run_on(&f.file("twoloops.quiver", TWO_LOOPS), "analyze", &[]);
    assert!(stdout(&o).contains("eff.dim(P) = 2"));
    assert!(stdout(&o).contains("inf"));
}

#[test]
fn analyze_json_matches_library() {
    let f = Fixture::new();
    let path = f.file("a3.quiver", A3);
    let v = json(&run_on(&path, "analyze", &["--truncate", "2", "--json"]));
    let q = effdim_core::parse_quiver(A3).unwrap();
    assert_eq!(
        v["totals"]["effdim_truncated"],
        effdim_core::effdim_truncated(&q, 2).unwrap()
    );
    assert_eq!(v["totals"]["effdim_path"], effdim_core::effdim_path(&q));
    assert_eq!(v["vertices"][1]["K"], serde_json::json!([0, 1]));
    assert_eq!(v["vertices"][0]["l_minus"], 0);

    let v = json(&run_on(
        &f.file("loop.quiver", LOOP),
        "analyze",
        &["--json"],
    ));
    assert_eq!(v["vertices"][0]["l_plus"], "inf");
}

#[test]
fn construct_examples() {
    let f = Fixture::new();
    let a2 = f.file("a2.quiver", A2);
    let v = json(&run_on(&a2, "construct", &["--truncate", "2"]));
    assert_eq!(v["kind"], "graded");
    assert_eq!(v["arrows"][0]["matrix"], serde_json::json!([[2]]));

    let v = json(&run_on(&a2, "construct", &["--truncate", "1"]));
    assert_eq!(v["vertex_dims"], serde_json::json!([1, 1]));
    assert_eq!(v["arrows"][0]["matrix"], serde_json::json!([[0]]));

    let v = json(&run_on(
        &f.file("twoloops.quiver", TWO_LOOPS),
        "construct",
        &[],
    ));
    assert_eq!(v["kind"], "symbolic");
    for a in v["arrows"].as_array().unwrap() {
        assert_eq!(a["shape"], serde_json::json!([2, 2]));
    }
    assert_eq!(v["arrows"][0]["rendered"][0][1], "eta(a)");
    assert_eq!(v["arrows"][1]["rendered"][1][0], "0");
}

#[test]
fn construct_is_deterministic() {
    let f = Fixture::new();
    let path = f.file("kron.quiver", KRONECKER);
    for extra in [&["--truncate", "3"][..], &[][..]] {
        let first = run_on(&path, "construct", extra).stdout;
        let second = run_on(&path, "construct", extra).stdout;
        assert_eq!(first, second);
    }
}

#[test]
fn verify_examples() {
    let f = Fixture::new();
    let o = run_on(&f.file("loop.quiver", LOOP), "verify", &["--truncate", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status: effective"));

    let o = run_on(
        &f.file("kron.quiver", KRONECKER),
        "verify",
        &["--max-len", "4", "--json"],
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["status"], "effective");
    assert_eq!(v["witness"], serde_json::json!([]));
}

#[test]
fn verify_sabotaged_representation() {
    let f = Fixture::new();
    let quiver = f.file("kron.quiver", KRONECKER);
    let rep_path = f.dir.path().join("rep.json");
    let o = run_on(
        &quiver,
        "construct",
        &["--truncate", "2", "--out", rep_path.to_str().unwrap()],
    );
    assert!(o.status.success());

    let ok = run_on(
        &quiver,
        "verify",
        &["--rep", rep_path.to_str().unwrap(), "--truncate", "2"],
    );
    assert_eq!(ok.status.code(), Some(0));

    let mut rep: Value = serde_json::from_str(&fs::read_to_string(&rep_path).unwrap()).unwrap();
    rep["arrows"][1]["matrix"] = rep["arrows"][0]["matrix"].clone();
    fs::write(&rep_path, serde_json::to_string(&rep).unwrap()).unwrap();

    let o = run_on(
        &quiver,
        "verify",
        &[
            "--rep",
            rep_path.to_str().unwrap(),
            "--truncate",
            "2",
            "--json",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "collision");
    assert_eq!(v["witness"], serde_json::json!(["a", "b"]));
}

#[test]
fn verify_rejects_mismatched_rep() {
    let f = Fixture::new();
    let rep_path = f.dir.path().join("rep.json");
    run_on(
        &f.file("a2.quiver", A2),
        "construct",
        &["--truncate", "2", "--out", rep_path.to_str().unwrap()],
    );
    let o = run_on(
        &f.file("kron.quiver", KRONECKER),
        "verify",
        &["--rep", rep_path.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stabilize_examples() {
    let f = Fixture::new();
    let v = json(&run_on(
        &f.file("loop.quiver", LOOP),
        "stabilize",
        &["--json"],
    ));
    assert_eq!((v["a"].as_u64(), v["b"].as_u64()), (Some(1), Some(0)));
    let values: Vec<u64> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["effdim"].as_u64().unwrap())
        .collect();
    assert_eq!(values, vec![1, 2]);

    let v = json(&run_on(&f.file("a3.quiver", A3), "stabilize", &["--json"]));
    assert_eq!((v["a"].as_u64(), v["b"].as_u64()), (Some(0), Some(3)));
    let values: Vec<u64> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["effdim"].as_u64().unwrap())
        .collect();
    assert_eq!(values, vec![3, 4, 3, 3]);

    let o = run_on(&f.file("isolated.quiver", ISOLATED), "stabilize", &[]);
    assert!(stdout(&o).starts_with("a = 0, b = 1"));
}

#[test]
fn formula_from_segments_and_file() {
    let o = run(&["formula", "--segments", "5", "--truncate", "3"]);
    assert!(stdout(&o).contains("eff.dim(P_3) = 9"));
    let f = Fixture::new();
    let v = json(&run_on(
        &f.file("a3.quiver", A3),
        "formula",
        &["--truncate", "2", "--json"],
    ));
    assert_eq!(v["effdim"], 4);
    assert_eq!(v["segments"], serde_json::json!([3]));
    let o = run(&["formula", "--segments", "3,1", "--truncate", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let f = Fixture::new();
    let o = run_on(
        &f.file("bad.quiver", "vertex x\narrow a: x -> y\n"),
        "analyze",
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = run(&["analyze", "/nonexistent/file.quiver"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_on(&f.file("a2.quiver", A2), "analyze", &["--truncate", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let f = Fixture::new();
    let out = f.dir.path().join("report.txt");
    let o = run_on(
        &f.file("loop.quiver", LOOP),
        "analyze",
        &["--truncate", "2", "--out", out.to_str().unwrap()],
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(out)
        .unwrap()
        .contains("eff.dim(P_2) = 2"));
}

#[test]
fn seeded_suite_runs() {
    let o = run(&[
        "suite",
        "--count",
        "4",
        "--seed",
        "11",
        "--threads",
        "2",
        "--json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["count"], 4);
    let again = run(&["suite", "--count", "4", "--seed", "11", "--json"]);
    assert_eq!(o.stdout, again.stdout);
}

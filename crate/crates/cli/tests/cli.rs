use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K43: &str = "3 4\n0 1 3\n0 2 3\n1 2 3\n0 1 2\n";
const STAR3: &str = "3 7\n0 1 2\n0 3 4\n0 5 6\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn matchpoly_golden() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    for method in ["enum", "recursive"] {
        let o = run(&["matchpoly", s(&k4), "--method", method]);
        assert_eq!(code(&o), 0);
        let v = stdout_json(&o);
        assert_eq!(
            v,
            serde_json::json!({"mu": {"var": "x", "terms": [{"exp": 4, "coef": "1"}, {"exp": 1, "coef": "-4"}]}})
        );
    }
}

#[test]
fn verify_exit_codes() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    let literal = run(&["verify", "godsil", s(&k4), "--root", "0"]);
    assert_eq!(code(&literal), 1);
    assert_eq!(stdout_json(&literal)["holds"], false);
    let ordered = run(&["verify", "godsil", s(&k4), "--root", "0", "--tree", "deletion-ordered"]);
    assert_eq!(code(&ordered), 0);

    assert_eq!(code(&run(&["verify", "divides", s(&k4)])), 1);
    let o = run(&["verify", "divides", s(&k4), "--tree", "deletion-ordered"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["quotient"]["terms"][0]["exp"], 9);

    for check in ["derivative", "rotation", "decomposition"] {
        assert_eq!(code(&run(&["verify", check, s(&k4)])), 0, "{check}");
    }
    assert_eq!(code(&run(&["verify", "mono", s(&k4), "--delete-vertex", "2"])), 0);
    assert_eq!(code(&run(&["verify", "mono", s(&k4), "--delete-edge", "0"])), 0);
    assert_eq!(code(&run(&["verify", "mono", s(&k4)])), 2);
    assert_eq!(code(&run(&["verify", "godsil", s(&k4), "--root", "9"])), 2);
}

#[test]
fn input_errors() {
    let f = Files::new();
    let empty = f.write("empty.hgr", "3 3\n");
    assert_eq!(code(&run(&["lambda", s(&empty)])), 2);
    let bad = f.write("bad.hgr", "3 4\n0 1\n");
    assert_eq!(code(&run(&["info", s(&bad)])), 2);
    let unsorted = f.write("unsorted.hgr", "2 3\n1 0\n");
    assert_eq!(code(&run(&["info", s(&unsorted)])), 2);
    assert_eq!(code(&run(&["info", s(&f.path("missing.hgr"))])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["lambda"])), 2);
    let k4 = f.write("k4.hgr", K43);
    assert_eq!(code(&run(&["lambda", s(&k4), "--tol", "-1"])), 2);
    assert_eq!(code(&run(&["lambda", s(&k4), "--tol", "abc"])), 2);
    assert_eq!(code(&run(&["alphanormal", s(&k4), "--alpha", "1/4"])), 2);
}

#[test]
fn resource_limits() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    assert_eq!(code(&run(&["pathtree", s(&k4), "--root", "0", "--max-vertices", "5"])), 3);
    let star = f.write("star.hgr", STAR3);
    let o = run(&["rho", s(&star), "--max-iter", "2", "--tol", "1e-14"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout_json(&o)["converged"], false);
}

#[test]
fn pathtree_export() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    let labels = f.path("labels.json");
    let o = run(&["pathtree", s(&k4), "--root", "0", "--labels", s(&labels)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("3 19\n"));
    assert_eq!(text.lines().count(), 10);
    let map: Value = serde_json::from_str(&std::fs::read_to_string(&labels).unwrap()).unwrap();
    assert_eq!(map["root"], 0);
    assert_eq!(map["labels"].as_object().unwrap().len(), 19);

    let o = run(&["pathtree", s(&k4), "--root", "0", "--tree", "deletion-ordered"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("3 13\n"));
}

#[test]
fn spectral_commands() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    let o = run(&["lambda", s(&k4), "--tol", "1e-10"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let mid: f64 = v["lambda"]["mid"].as_str().unwrap().parse().unwrap();
    assert!((mid - 4f64.cbrt()).abs() < 1e-10);
    assert_eq!(v["y"]["lo"], "4");

    let csv = String::from_utf8(run(&["roots", s(&k4), "--csv"]).stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "re,im");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("1.58740105196"));

    let v = stdout_json(&run(&["roots", s(&k4)]));
    assert_eq!(v["max_modulus_count"], 3);
    assert_eq!(v["rotation_invariant"], true);

    let v = stdout_json(&run(&["cyclic", s(&k4)]));
    assert_eq!((v["cyclic_index"].as_u64(), v["simple_largest_zero"].as_bool()), (Some(3), Some(true)));

    let star = f.write("star.hgr", STAR3);
    let o = run(&["bounds", s(&star)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!((v["lower_equal"].as_bool(), v["lower_tight"].as_bool()), (Some(true), Some(true)));

    let v = stdout_json(&run(&["rho", s(&star)]));
    assert!((v["rho"].as_f64().unwrap() - 3f64.cbrt()).abs() < 1e-9);
}

#[test]
fn alphanormal_certificates() {
    let f = Files::new();
    let star = f.write("star.hgr", STAR3);
    let o = run(&["alphanormal", s(&star), "--alpha", "1/3"]);
    assert_eq!(code(&o), 0);
    let cert = stdout_json(&o);
    assert_eq!(cert["report"]["c1_ok"], true);
    let cert_path = f.write("cert.json", &cert.to_string());
    assert_eq!(code(&run(&["alphanormal", s(&star), "--check", s(&cert_path)])), 0);

    let mut broken = cert.clone();
    broken["B"][0]["w"] = Value::String("0.3".into());
    let broken_path = f.write("broken.json", &broken.to_string());
    assert_eq!(code(&run(&["alphanormal", s(&star), "--check", s(&broken_path)])), 1);
    assert_eq!(
        code(&run(&["alphanormal", s(&star), "--check", s(&broken_path), "--tau", "1/10"])),
        0
    );

    // 1/5 is not a root; 1/2 stops early on the sub-star of two edges
    assert_eq!(code(&run(&["alphanormal", s(&star), "--alpha", "1/5"])), 1);
    let o = run(&["alphanormal", s(&star), "--alpha", "1/2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["outcome"], "inadmissible-star");
    assert_eq!(code(&run(&["alphanormal", s(&star)])), 2);
    assert_eq!(code(&run(&["alphanormal", s(&star), "--alpha", "1/3", "--from-lambda"])), 2);

    let o = run(&["alphanormal", s(&star), "--from-lambda"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["surrogate"]["alpha"], "1/3");
}

#[test]
fn generation_is_deterministic() {
    let a = run(&["gen", "kgraph", "--k", "3", "--n", "8", "--edges", "6", "--seed", "18446744073709551615"]);
    let b = run(&["gen", "kgraph", "--k", "3", "--n", "8", "--edges", "6", "--seed", "18446744073709551615"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let t = run(&["gen", "ktree", "--k", "4", "--edges", "5", "--seed", "3"]);
    assert!(String::from_utf8(t.stdout.clone()).unwrap().starts_with("4 16\n"));

    let f = Files::new();
    let p = f.write("t.hgr", std::str::from_utf8(&t.stdout).unwrap());
    let info = stdout_json(&run(&["info", s(&p)]));
    assert_eq!(info["is_ktree"], true);
    assert_eq!(info["edges"], 5);
    assert_eq!(code(&run(&["gen", "kgraph", "--k", "3", "--edges", "6", "--seed", "1"])), 2);
    assert_eq!(code(&run(&["gen", "ktree", "--k", "3", "--edges", "6"])), 2);
}

#[test]
fn output_is_byte_stable() {
    let f = Files::new();
    let k4 = f.write("k4.hgr", K43);
    for args in [vec!["lambda", s(&k4)], vec!["roots", s(&k4), "--csv"], vec!["info", s(&k4)]] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn selftest_filter_and_negative_control() {
    let o = run(&["selftest", "--filter", "k43"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);

    let o = run(&["selftest", "--filter", "oracle", "--sabotage-mu"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["failed"], serde_json::json!(["oracle-equivalence"]));

    assert_eq!(code(&run(&["selftest", "--filter", "nothing-like-this"])), 2);
}

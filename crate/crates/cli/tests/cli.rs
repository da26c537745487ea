use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mclab_cli::document::TupleDocument;
use mclab_core::OperatorTuple;
use serde_json::Value;
use tempfile::TempDir;

fn mclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mclab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad JSON {text:?}: {e}"))
}

fn load(path: &Path) -> OperatorTuple {
    TupleDocument::parse(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .to_tuple()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", p.to_str().unwrap()]);
    let out = mclab(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn scalar_doc(re: f64, im: f64) -> String {
    format!(r#"{{"schemaVersion":1,"n":1,"dim":1,"operators":[[[[{re},{im}]]]]}}"#)
}

fn max_diff(a: &OperatorTuple, b: &OperatorTuple) -> f64 {
    a.ops()
        .iter()
        .zip(b.ops())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn gen_row_norm_and_diagnostics() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("t.json");
    let out = mclab(&[
        "gen", "--dim", "4", "--n", "2", "--seed", "7", "--margin", "0.1", "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let t = load(&p);
    assert_eq!((t.n(), t.dim()), (2, 4));
    assert!((t.row_norm() - 0.9).abs() < 1e-10);
    let diag = stdout_json(&out);
    assert_eq!(diag["pass"], Value::Bool(true));
}

#[test]
fn gen_scalar_on_circle() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "s.json", &["--dim", "1", "--n", "1", "--seed", "0", "--margin", "0.0"]);
    let t = load(&p);
    assert!((t.ops()[0][(0, 0)].norm() - 1.0).abs() < 1e-14);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for kind in ["random", "nilpotent", "spherical", "multishift"] {
        let args = ["--dim", "5", "--n", "3", "--seed", "11", "--kind", kind];
        let a = std::fs::read(gen(&dir, "a.json", &args)).unwrap();
        let b = std::fs::read(gen(&dir, "b.json", &args)).unwrap();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn gen_to_stdout_without_out() {
    let out = mclab(&["gen", "--dim", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let doc = TupleDocument::parse(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(doc.dim, 2);
}

#[test]
fn gen_rejects_bad_margin() {
    assert_eq!(code(&mclab(&["gen", "--margin", "1.5"])), 2);
    assert_eq!(code(&mclab(&["gen", "--dim", "0"])), 2);
}

#[test]
fn classify_multishift_and_spherical() {
    let dir = TempDir::new().unwrap();
    let s = gen(&dir, "s.json", &["--kind", "multishift", "--n", "2", "--degree", "3"]);
    let r = stdout_json(&mclab(&["classify", s.to_str().unwrap()]));
    assert_eq!(r["isPure"], Value::Bool(true));
    assert_eq!(r["isCnc"], Value::Bool(true));

    let z = gen(&dir, "z.json", &["--kind", "spherical", "--dim", "3", "--n", "2"]);
    let r = stdout_json(&mclab(&["classify", z.to_str().unwrap()]));
    assert_eq!(r["isC1"], Value::Bool(true));
    assert_eq!(r["isCnc"], Value::Bool(false));
    assert_eq!(r["isPure"], Value::Bool(false));
}

#[test]
fn malformed_json_exits_2_with_position() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", "{\"schemaVersion\": 1,\n \"n\": [oops}");
    let out = mclab(&["classify", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(code(&mclab(&["classify", "/nonexistent/t.json"])), 2);
}

#[test]
fn non_contraction_exits_3() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "big.json", &scalar_doc(1.5, 0.0));
    assert_eq!(code(&mclab(&["classify", p.to_str().unwrap()])), 3);
}

#[test]
fn theta_of_zero_tuple_is_z() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "zero.json",
        r#"{"schemaVersion":1,"n":2,"dim":1,"operators":[[[[0,0]]],[[[0,0]]]]}"#,
    );
    let r = stdout_json(&mclab(&["theta", p.to_str().unwrap(), "--z", "0.3,0.4"]));
    let theta = &r["theta"];
    let entry = |j: usize, k: usize| theta[0][j][k].as_f64().unwrap();
    assert_eq!(r["codomainDim"], 1);
    assert_eq!(r["domainDim"], 2);
    assert!((entry(0, 0) - 0.3).abs() < 1e-15 && entry(0, 1).abs() < 1e-15);
    assert!((entry(1, 0) - 0.4).abs() < 1e-15 && entry(1, 1).abs() < 1e-15);
}

#[test]
fn theta_of_scalar_is_blaschke_factor() {
    // θ_t(z) = (z − t)/(1 − z t̄) for a scalar contraction t
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "t.json", &scalar_doc(0.5, 0.0));
    for (z, want) in [(0.0, -0.5), (0.3, -0.2 / 0.85), (-0.6, -1.1 / 1.3)] {
        let r = stdout_json(&mclab(&["theta", p.to_str().unwrap(), "--z", &z.to_string()]));
        let got = r["theta"][0][0][0].as_f64().unwrap();
        assert!((got - want).abs() < 1e-14, "z={z}: {got} vs {want}");
    }
}

#[test]
fn theta_pole_exits_3_and_bad_point_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "t.json", &["--dim", "3", "--n", "2"]);
    let path = p.to_str().unwrap();
    assert_eq!(code(&mclab(&["theta", path, "--z", "0.8,0.6"])), 3);
    assert_eq!(code(&mclab(&["theta", path, "--z", "0.8,abc"])), 2);
    assert_eq!(code(&mclab(&["theta", path, "--z", "0.1"])), 2);
}

#[test]
fn transform_at_origin_negates() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "t.json", &["--dim", "3", "--n", "2", "--seed", "4"]);
    let q = dir.path().join("q.json");
    let out = mclab(&["transform", p.to_str().unwrap(), "--out", q.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (t, tq) = (load(&p), load(&q));
    let neg = OperatorTuple::new(t.ops().iter().map(|m| -m).collect()).unwrap();
    assert!(max_diff(&neg, &tq) < 1e-15);
    assert_eq!(stdout_json(&out)["classesPreserved"], Value::Bool(true));
}

#[test]
fn transform_twice_is_identity() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "t.json", &["--dim", "4", "--n", "2", "--seed", "9"]);
    let (q, r) = (dir.path().join("q.json"), dir.path().join("r.json"));
    let lambda = "0.3-0.2i,0.1+0.4i";
    for (from, to) in [(&p, &q), (&q, &r)] {
        let out = mclab(&[
            "transform", from.to_str().unwrap(), "--lambda", lambda, "--out", to.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(max_diff(&load(&p), &load(&r)) < 1e-9);
}

#[test]
fn transform_keeps_multishift_pure() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "s.json", &["--kind", "multishift", "--n", "2", "--degree", "3"]);
    // a rotation in the (z1, z2) plane composed with a phase
    let (c, s) = (0.6_f64, 0.8_f64);
    let omega = write(
        &dir,
        "omega.json",
        &format!("[[[{c},0],[{},0]],[[0,{s}],[0,{c}]]]", -s),
    );
    let q = dir.path().join("q.json");
    let out = mclab(&[
        "transform", p.to_str().unwrap(), "--lambda", "0.2,-0.5i", "--omega",
        omega.to_str().unwrap(), "--out", q.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_json(&out);
    assert_eq!(r["after"]["isPure"], Value::Bool(true));
    assert_eq!(r["classesPreserved"], Value::Bool(true));
}

#[test]
fn transform_rejects_non_unitary_omega() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "t.json", &["--dim", "2", "--n", "2"]);
    let omega = write(&dir, "omega.json", "[[[2,0],[0,0]],[[0,0],[1,0]]]");
    let out = mclab(&["transform", p.to_str().unwrap(), "--omega", omega.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_single_suite() {
    let out = mclab(&["verify", "--suite", "lemma4.1", "--trials", "100", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["suiteName"], "lemma4.1");
    assert_eq!(r["trials"], 100);
    assert_eq!(r["seed"], 1);
    assert!(r["maxResidual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn verify_text_output() {
    let out = mclab(&["--output", "text", "verify", "--suite", "prop5.1", "--trials", "10"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS prop5.1"));
}

#[test]
fn verify_unknown_suite() {
    let out = mclab(&["verify", "--suite", "nope"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("lemma4.1"));
}

#[test]
fn verify_respects_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_mclab"))
        .args(["verify", "--suite", "eq4.5", "--trials", "20"])
        .env("MCLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn model_of_nilpotent_tuple() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "t.json", &["--kind", "nilpotent", "--dim", "3", "--n", "2", "--seed", "5"]);
    let out = mclab(&["model", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_json(&out);
    assert_eq!(r["modelDim"], 3);
    assert!(r["phiUnitarity"].as_f64().unwrap() <= 1e-9);
    assert!(r["intertwiningResidual"].as_f64().unwrap() <= 1e-9);
    assert!(r["wordInvariantDistance"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn model_of_non_pure_tuple_exits_3() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "z.json", &["--kind", "spherical", "--dim", "2", "--n", "2"]);
    assert_eq!(code(&mclab(&["model", p.to_str().unwrap()])), 3);
}

#[test]
fn spectrum_of_scalar() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "t.json", &scalar_doc(0.4, 0.0));
    let path = p.to_str().unwrap();
    let r = stdout_json(&mclab(&["spectrum", path, "--lambda", "0.4"]));
    assert_eq!(r["inSigmaR"], Value::Bool(true));
    assert_eq!(r["agree"], Value::Bool(true));
    let r = stdout_json(&mclab(&["spectrum", path, "--lambda", "-0.4"]));
    assert_eq!(r["inSigmaR"], Value::Bool(false));
    assert_eq!(r["agree"], Value::Bool(true));
}

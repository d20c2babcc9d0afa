use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn homsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homsurf")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

struct Fixtures(TempDir);

impl Fixtures {
    fn new() -> Self {
        Fixtures(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_owned()
    }
}

fn close(v: &Value, re: f64, im: f64) -> bool {
    let get = |k: &str| v.get(k).and_then(Value::as_f64).unwrap_or(0.0);
    (get("re") - re).abs() < 1e-9 && (get("im") - im).abs() < 1e-9
}

#[test]
fn classify_examples() {
    let fx = Fixtures::new();
    let cases = [
        (r#"{"ambient":"C2","generators":[[{"re":1},{"re":0}]]}"#, "D1_1"),
        (r#"{"ambient":"uaff","generators":[[{"re":0},{"re":1}]]}"#, "D2_1"),
        (
            r#"{"ambient":"qd","divisor":{"points":[{"re":0},{"re":0,"im":6.283185307179586}]},
                "generators":[[{"re":1},{"re":0}],[{"re":0},{"re":1}]]}"#,
            "Bβ1D",
        ),
    ];
    for (i, (body, label)) in cases.iter().enumerate() {
        let f = fx.file(&format!("g{i}.json"), body);
        let v = stdout_json(&homsurf(&["classify", &f]));
        assert_eq!(v["label"], *label, "{v}");
    }
}

#[test]
fn act_examples() {
    let fx = Fixtures::new();
    let g = fx.file("g.json", r#"{"t":{"re":1},"f":{"terms":[{"lambda":{"re":0},"coeffs":[{"re":0},{"re":1}]}]}}"#);
    let x = fx.file("x.json", r#"{"z":{"re":0},"w":{"re":0}}"#);
    let fam = fx.file("fam.json", r#"{"family":"Bβ1","divisor":{"points":[{"re":0,"mult":2}]}}"#);
    let v = stdout_json(&homsurf(&["act", "--family", &fam, "--element", &g, "--point", &x]));
    assert!(close(&v["z"], 1.0, 0.0) && close(&v["w"], 1.0, 0.0), "{v}");

    let ug = fx.file("ug.json", &format!(r#"{{"a":{{"re":0,"im":{}}},"b":{{"re":0}}}}"#, std::f64::consts::PI));
    let ux = fx.file("ux.json", r#"{"a":{"re":0},"b":{"re":1}}"#);
    let v = stdout_json(&homsurf(&["act", "--family", "D2", "--element", &ug, "--point", &ux]));
    assert!(close(&v["a"], 0.0, std::f64::consts::PI) && close(&v["b"], -1.0, 0.0), "{v}");

    let v = stdout_json(&homsurf(&["act", "--family", "D2", "--element", &ug, "--point", &ux, "--cover", "D2_1"]));
    assert!(v.is_object(), "{v}");
}

#[test]
fn input_errors_exit_2() {
    let fx = Fixtures::new();
    let bad = fx.file("bad.json", "{not json");
    assert_eq!(homsurf(&["classify", &bad]).status.code(), Some(2));
    assert_eq!(homsurf(&["classify", "/nonexistent/file.json"]).status.code(), Some(2));
    let amb = fx.file("amb.json", r#"{"ambient":"P1","generators":[]}"#);
    assert_eq!(homsurf(&["classify", &amb]).status.code(), Some(2));
    assert_eq!(homsurf(&["verify", "Z9"]).status.code(), Some(2));
    let x = fx.file("x.json", r#"{"z":{"re":0},"w":{"re":0}}"#);
    let out = homsurf(&["act", "--family", "C7", "--element", &x, "--point", &x, "--cover", "D2_1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalogue_filter_and_json() {
    let out = homsurf(&["catalogue", "--filter", "Bγ"]);
    assert!(out.status.success());
    let labels: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_owned())
        .collect();
    assert_eq!(labels, ["Bγ1", "Bγ2", "Bγ2′", "Bγ3", "Bγ4"]);

    let v = stdout_json(&homsurf(&["catalogue", "--json", "--filter", "D3"]));
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["label"], "D3");
}

#[test]
fn verify_is_deterministic() {
    let run = || homsurf(&["verify", "D2", "--samples", "100", "--seed", "1", "--json"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v[0]["max_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn eps_override_can_fail_verification() {
    let out = Command::new(env!("CARGO_BIN_EXE_homsurf"))
        .args(["verify", "C9", "--samples", "20"])
        .env("HOMSURF_EPS", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

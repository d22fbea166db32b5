use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weierstrass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(&[args, &["--format", "json"]].concat());
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_log2_certifies_weierstrass() {
    let o = run(&["classify", "log2(1+x)", "--domain", "unit"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.lines()
            .any(|l| l.starts_with("Weierstrass") && l.contains("Certified")),
        "{s}"
    );
}

#[test]
fn classify_cos_json_has_a_witness() {
    let (code, v) = json(&["classify", "cos(x)/cos(1)", "--domain", "unit"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "classify");
    let verdicts = v["results"][0]["verdicts"].as_array().unwrap();
    let l = verdicts
        .iter()
        .find(|x| x["property"] == "l_weierstrass")
        .unwrap();
    assert_eq!(l["outcome"]["status"], "refuted");
    assert!(l["outcome"]["margin"].as_f64().unwrap() > 0.4);
    let s = verdicts
        .iter()
        .find(|x| x["property"] == "submultiplicative")
        .unwrap();
    assert_eq!(s["outcome"]["status"], "certified");
}

#[test]
fn json_envelope_is_stable() {
    let args = ["classify", "(4/pi)*arctan(x)"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    let mut keys: Vec<_> = a.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["command", "config", "results", "version"]);
    assert_eq!(a["config"]["max_depth"], 40);
    assert_eq!(a["config"]["delta"], 1e-6);
}

#[test]
fn syntax_errors_exit_2_with_a_column() {
    let o = run(&["classify", "ln(x"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    // Column 5 is one past the last character of the four-character input.
    assert!(e.contains("column 5"), "{e}");
    assert!(run(&["classify", "foo(x)"]).status.code() == Some(2));
}

#[test]
fn unnormalised_input_exits_2_with_the_check() {
    let (code, v) = json(&["classify", "sin(pi*x/4)"]);
    assert_eq!(code, 2);
    let f1 = v["results"][0]["normalization"]["f1"].as_f64().unwrap();
    assert!((f1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    assert!(v["error"].as_str().unwrap().contains("not admissible"));
}

#[test]
fn bad_domain_flags_exit_2() {
    assert_eq!(
        run(&["classify", "x", "--delta", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "x", "--domain", "ray", "--cap", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "x", "--domain", "disc"]).status.code(),
        Some(2)
    );
}

#[test]
fn constants_report() {
    let (code, v) = json(&["constants"]);
    assert_eq!(code, 0);
    let c = &v["results"][0];
    assert!((c["xi"].as_f64().unwrap() - 0.21609).abs() < 1e-5);
    assert!((c["x_min"].as_f64().unwrap() - 1.46163).abs() < 1e-5);
    assert!(c["gamma_crosscheck"].as_f64().unwrap() < 1e-10);
    assert_eq!(c["series_terms"], 100_000);
}

#[test]
fn catalog_filter_and_unknown_ids() {
    let (code, v) = json(&["catalog", "identity", "cos"]);
    assert_eq!(code, 0);
    let ids: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].clone())
        .collect();
    assert_eq!(ids, ["identity", "cos"]);
    let o = run(&["catalog", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown catalog id"));
}

#[test]
fn catalog_exits_1_on_a_mismatch() {
    // Depth 0 leaves the log2 submultiplicativity certificate undecided.
    let o = run(&["catalog", "log2", "--max-depth", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn ineq_point_checks() {
    let (code, v) = json(&["ineq", "logprod", "0.3", "0.5", "0.9"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["holds"], true);
    assert!(r["slack"].as_f64().unwrap() > 0.0);

    let (code, v) = json(&["ineq", "sin", "1", "1"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["holds"], false);
    assert!((r["slack"].as_f64().unwrap() + 1.0).abs() < 1e-10);

    let (_, v) = json(&["ineq", "product", "2", "3"]);
    assert_eq!(
        (
            v["results"][0]["lhs"].as_f64(),
            v["results"][0]["rhs"].as_f64()
        ),
        (Some(6.0), Some(4.0))
    );
    let (_, v) = json(&["ineq", "classical", "0.5", "0.5"]);
    assert_eq!(v["results"][0]["lhs"], 0.25);
    let (_, v) = json(&["ineq", "gamma", "0.4", "1", "1"]);
    assert!(v["results"][0]["slack"].as_f64().unwrap().abs() < 1e-12);
    let (_, v) = json(&["ineq", "gamma-uv", "0.2", "0.1", "0.05"]);
    assert!(v["results"][0]["notes"].to_string().contains("uv/a"));
    let (_, v) = json(&["ineq", "sandwich", "1", "1"]);
    assert!(v["results"][0]["slack"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn ineq_errors_exit_2() {
    let o = run(&["ineq", "frobnicate", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown inequality name"));
    assert_eq!(
        run(&["ineq", "product", "0.5", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["ineq", "gamma", "0.5", "0.5", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["ineq", "sin", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["ineq", "classical", "0.5", "-0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn ineq_fuzz_is_seeded() {
    let a = json(&["ineq", "logprod", "--fuzz", "5000", "--seed", "3"]).1;
    let b = json(&["ineq", "logprod", "--fuzz", "5000", "--seed", "3"]).1;
    assert_eq!(a, b);
    let results = a["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert!(results
        .iter()
        .all(|r| r["violations"] == 0 && r["samples"] == 5000));
    let c = json(&["ineq", "logprod", "--fuzz", "5000", "--seed", "4"]).1;
    assert_ne!(a["results"], c["results"]);
}

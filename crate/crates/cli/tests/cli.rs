use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mhall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhall"))
        .args(args)
        .env_remove("HALL_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str, contents: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("mhall-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn a2_file() -> String {
    fixture("a2.json", r#"{"vertices":["1","2"],"arrows":[{"src":"1","tgt":"2"}]}"#)
}

#[test]
fn euler_form_of_a2() {
    let o = mhall(&["euler", "--quiver", &a2_file(), "--x", "1,0", "--y", "0,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn flag_variety_of_the_line() {
    let o = mhall(&["flag", "--r", "2", "--delta", "1,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("t+1"));
    assert!(out.contains("parabolic order: t^3-2t^2+t"));
    let o = mhall(&["--json", "flag", "--r", "2", "--delta", "1,1", "--q", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flags"]["display"], "t+1");
    assert_eq!(v["evaluated"]["flags"], "4");
}

#[test]
fn verify_integration_on_a2() {
    let o = mhall(&["verify", "--suite", "integration", "--quiver", &a2_file(), "--q", "2", "--bound", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap().ends_with("0 failed"));
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn verify_suites_with_small_grids() {
    for (suite, extra) in [
        ("assoc", vec!["--bound", "1"]),
        ("recursion", vec!["--q", "2", "--bound", "2"]),
        ("characters", vec!["--bound", "4"]),
        ("periodic", vec!["--q", "2", "--bound", "3"]),
        ("2segal", vec!["--quiver", "a1", "--q", "2", "--bound", "2"]),
    ] {
        let mut args = vec!["--json", "verify", "--suite", suite];
        args.extend(extra);
        let o = mhall(&args);
        assert!(o.status.success(), "{suite}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true, "{suite}");
        assert_eq!(v["failed"], 0);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(mhall(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mhall(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let bad = fixture("bad.json", "{not json");
    let o = mhall(&["euler", "--quiver", &bad, "--x", "1", "--y", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let cyclic = fixture("cyclic.json", r#"{"vertices":["1"],"arrows":[{"src":"1","tgt":"1"}]}"#);
    assert_eq!(mhall(&["euler", "--quiver", &cyclic, "--x", "1", "--y", "1"]).status.code(), Some(2));
    let o = mhall(&["euler", "--quiver", "a2", "--x", "1", "--y", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension"));
    let o = mhall(&["--budget", "10", "enumerate", "--quiver", "a2", "--dim", "2,2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn budget_flag_overrides_environment() {
    let run = |env: &str, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mhall"));
        c.env("HALL_BUDGET", env);
        if let Some(b) = flag {
            c.args(["--budget", b]);
        }
        c.args(["enumerate", "--quiver", "a2", "--dim", "2,2", "--q", "2"]);
        c.output().unwrap().status.code()
    };
    assert_eq!(run("10", None), Some(3));
    assert_eq!(run("10", Some("100000")), Some(0));
    assert_eq!(run("100000", Some("10")), Some(3));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "semistable", "--quiver", "kronecker", "--dim", "1,1", "--theta", "1,0", "--q", "3"];
    let a = mhall(&args);
    let b = mhall(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["evaluated"]["value"], v["evaluated"]["bruteforce"]);
}

#[test]
fn hall_product_of_simples() {
    let quiver = a2_file();
    let s1 = fixture("s1.json", r#"{"q":2,"dim":[1,0],"mats":[[]]}"#);
    let s2 = fixture("s2.json", r#"{"q":2,"dim":[0,1],"mats":[[[]]]}"#);
    let o = mhall(&["--json", "hall-product", "--quiver", &quiver, "--q", "2", "--bound", "2", "--left", &s1, "--right", &s2]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // 1_{S_1} * 1_{S_2} counts subobjects S_1 with quotient S_2: only the indecomposable has one.
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0]["value"], "1/1");
    let o = mhall(&["--json", "integrate", "--quiver", &quiver, "--q", "2", "--bound", "2", "--element", &s1]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"][0]["value"], "1/1");
}

#[test]
fn motivic_and_hn_commands() {
    let o = mhall(&["motivic", "--quiver", "a1", "--dim", "1", "--q", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("at L = 2: 1/1"));
    let o = mhall(&["--json", "hn-type", "--quiver", "a2", "--dim", "1,1", "--theta", "1,0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["types"].as_array().unwrap().len(), 2);
    let rep = fixture("split.json", r#"{"q":2,"dim":[1,1],"mats":[[[0]]]}"#);
    let o = mhall(&["--json", "hn-filtration", "--quiver", "a2", "--rep", &rep, "--theta", "0,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subquotients"].as_array().unwrap().len(), 2);
}

#[test]
fn period_domain_and_equivariant() {
    let o = mhall(&["--json", "period-domain", "--delta", "1,1", "--weights", "1,0", "--q", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polynomial"]["display"], "t-2");
    assert_eq!(v["count"], "0");
    let o = mhall(&["--json", "equivariant", "--delta", "1,1", "--f1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["character"]["classes"], serde_json::json!(["1^2", "2"]));
    assert_eq!(v["character"]["display"], serde_json::json!(["t-1", "t+1"]));
    assert_eq!(mhall(&["equivariant", "--delta", "1,1", "--q", "2", "--f1"]).status.code(), Some(2));
}

#[test]
fn hecke_of_s3() {
    let o = mhall(&["--json", "hecke", "--eta", "2,1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["double_coset_sizes"], serde_json::json!([2, 4]));
    assert_eq!(v["associative"], true);
    let last = v["products"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["coeffs"], serde_json::json!(["2/1", "1/1"]));
}

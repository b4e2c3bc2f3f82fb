use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn crtv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crtv")).args(args).env_remove("CRTV_TRUNC").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn problem_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const HEISENBERG: &str = r#"{
  "n": 1,
  "N": 2,
  "source_rho": "-1/2*i*(Z2 - XI2) - Z1*XI1",
  "target_rho": "-1/2*i*(ZP3 - XIP3) - ZP1*XIP1 + ZP2*XIP2",
  "map": ["Z1", "0", "Z2"]
}"#;

#[test]
fn sphere_map_is_not_transversal() {
    let r = json(&crtv(&["examples", "run", "ex1_4", "--n", "3", "--json"]));
    assert_eq!(r["transversal_at_origin"], false);
    assert_eq!(r["wh_codim_witness"], "Z1");
    assert_eq!(r["a"], "-Z1*XI1");
}

#[test]
fn quadric_embedding_factor_is_proportional_to_the_sum() {
    let r = json(&crtv(&["examples", "run", "ex1_2", "--n", "2", "--json"]));
    assert_eq!(r["a"], "-2*Z1 - 2*Z2 - 2*XI1 - 2*XI2");
    assert_eq!(r["transversal_at_origin"], false);
}

#[test]
fn check_on_a_file() {
    let f = problem_file(HEISENBERG);
    let path = f.path().to_str().unwrap();
    let r = json(&crtv(&["check", path, "--json"]));
    assert_eq!(r["transversal_at_origin"], true);
    assert_eq!(r["a"], "1");
    let text = crtv(&["check", path]);
    assert!(text.status.success());
    assert!(!stdout(&text).is_empty());
}

#[test]
fn exit_codes() {
    let bad_syntax = problem_file(&HEISENBERG.replace("\"Z1\", \"0\"", "\"Z1 +\", \"0\""));
    assert_eq!(crtv(&["check", bad_syntax.path().to_str().unwrap()]).status.code(), Some(2));
    let not_json = problem_file("{ n: 1");
    assert_eq!(crtv(&["check", not_json.path().to_str().unwrap()]).status.code(), Some(2));
    let not_preserving = problem_file(&HEISENBERG.replace("[\"Z1\"", "[\"2*Z1\""));
    let o = crtv(&["check", not_preserving.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("remainder"));
    assert_eq!(crtv(&["examples", "run", "no_such_example"]).status.code(), Some(1));
    assert_eq!(crtv(&["check", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn levi_minors_and_locus() {
    let f = problem_file(&crtv_file("ex1_4", 1));
    let path = f.path().to_str().unwrap();
    let levi = json(&crtv(&["levi", path, "--json"]));
    assert_eq!(levi["source"]["levi_rank"], 1);
    assert_eq!(levi["target"]["levi_rank"], 3);
    let minors = json(&crtv(&["minors", path, "--json"]));
    assert_eq!(minors["generic_rank"], 2);
    assert_eq!(minors["sizes"][1]["codim_ge2"]["witness"], "Z1");
    let mut top: Vec<&str> =
        minors["sizes"][1]["nonzero"].as_array().unwrap().iter().map(|m| m["value"].as_str().unwrap()).collect();
    top.sort();
    assert_eq!(top, ["-Z1", "2*Z1^2"]);
    let locus = json(&crtv(&["locus", path, "--json"]));
    assert_eq!(locus["transversal_at_origin"], false);
    assert!(crtv(&["locus", path]).status.success());
}

fn crtv_file(name: &str, n: usize) -> String {
    stdout(&crtv(&["examples", "show", name, "--n", &n.to_string()]))
}

#[test]
fn examples_list_and_show() {
    let list = stdout(&crtv(&["examples", "list"]));
    for name in ["ex1_2", "ex1_4", "heisenberg_embed", "sphere", "hyperplane"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let shown: Value = serde_json::from_str(&crtv_file("heisenberg_embed", 2)).unwrap();
    assert_eq!(shown["n"], 2);
    assert_eq!(shown["N"], 3);
    assert_eq!(shown["map"].as_array().unwrap().len(), 4);
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "--trials", "5", "--seed", "11", "--regime", "any", "--json"];
    let a = json(&crtv(&args));
    let b = json(&crtv(&args));
    assert_eq!(a, b);
    assert_eq!(crtv(&["fuzz", "--regime", "2N-r<"]).status.code(), Some(2));
}

#[test]
fn truncation_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_crtv"));
        c.args(["examples", "run", "hyperplane", "--json"]).env_remove("CRTV_TRUNC");
        if let Some(v) = env {
            c.env("CRTV_TRUNC", v);
        }
        if let Some(k) = flag {
            c.args(["--trunc", k]);
        }
        c.output().unwrap()
    };
    assert_eq!(json(&run(None, None))["finite_type"], "infinite_type_up_to_order(8)");
    assert_eq!(json(&run(Some("5"), None))["finite_type"], "infinite_type_up_to_order(5)");
    assert_eq!(json(&run(Some("5"), Some("4")))["finite_type"], "infinite_type_up_to_order(4)");
    assert_eq!(json(&run(Some("oops"), Some("4")))["finite_type"], "infinite_type_up_to_order(4)");
    assert_eq!(run(Some("oops"), None).status.code(), Some(2));
}

use std::process::{Command, Output};

use serde_json::Value;

fn vir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vir")).args(args).output().expect("vir runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = vir(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn yang_lee_vacuum_verdict() {
    let v = json(&["verdict", "--c", "-22/5", "--h", "0", "--alpha", "0", "--beta", "6/5"]);
    assert_eq!(v["command"], "verdict");
    assert_eq!(v["result"]["verdict"]["status"], "Reducible");
    assert_eq!(v["result"]["verdict"]["subquotient_weights"], serde_json::json!(["-1/5"]));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--json", "verdict", "--c", "1/2", "--h", "1/16", "--alpha", "1/8", "--beta", "15/16"];
    assert_eq!(vir(&args).stdout, vir(&args).stdout);
    let args = ["--json", "minimal-table", "--p", "3", "--q", "4"];
    assert_eq!(vir(&args).stdout, vir(&args).stdout);
}

#[test]
fn ising_fusion_of_energy_with_itself() {
    let v = json(&["fusion", "--p", "3", "--q", "4", "--m1", "2", "--n1", "2", "--m2", "2", "--n2", "2"]);
    let products = v["result"]["products"].as_array().unwrap();
    let weights: Vec<&str> = products.iter().map(|p| p["h"].as_str().unwrap()).collect();
    assert_eq!(weights, ["0", "1/2"]);
    assert_eq!(products[1]["flipped"], serde_json::json!([2, 1]));
}

#[test]
fn staged_quotient_singular_vector() {
    let out = vir(&["singular", "--c", "1/2", "--h", "0", "--level", "6", "--quotient"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 singular vector(s)"), "{text}");
    assert!(text.contains("93/64*L-3^2"), "{text}");
}

#[test]
fn verma_singular_vector_at_level_two() {
    let v = json(&["singular", "--c", "-22/5", "--h", "-1/5", "--level", "2"]);
    assert_eq!(v["result"]["vectors"], serde_json::json!(["1*L-1^2 - 2/5*L-2"]));
}

#[test]
fn degree_reports_first_level() {
    assert_eq!(json(&["degree", "--c", "1/2", "--h", "1/16"])["result"]["degree"], 2);
    assert_eq!(json(&["degree", "--c", "1/3", "--h", "2/7", "--max-level", "4"])["result"]["degree"], Value::Null);
}

#[test]
fn ppoly_methods_agree() {
    let v = json(&["ppoly", "--c", "-22/5", "--h", "-1/5", "--alpha", "-2/5", "--beta", "6/5"]);
    let polys = v["result"]["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 2);
    assert_eq!(polys[0]["coefficients"], polys[1]["coefficients"]);
    assert_eq!(polys[0]["integral_roots"], serde_json::json!([0]));
}

#[test]
fn reducible_pairs_of_yang_lee_field() {
    let v = json(&["reducible-pairs", "--p", "2", "--q", "5", "--m", "1", "--n", "2"]);
    let pairs: Vec<(String, String)> = v["result"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["alpha"].as_str().unwrap().to_string(), p["beta"].as_str().unwrap().to_string()))
        .collect();
    assert!(pairs.contains(&("-2/5".into(), "6/5".into())), "{pairs:?}");
    assert!(pairs.contains(&("-1/5".into(), "6/5".into())), "{pairs:?}");
}

#[test]
fn oracle_sees_the_yang_lee_step() {
    let v = json(&[
        "oracle", "--c", "-22/5", "--h", "0", "--alpha", "0", "--beta", "6/5", "--window", "-2:2", "--level-max", "5",
    ]);
    assert_eq!(v["consistent"], true);
    let strict: Vec<i64> = v["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| !(s["upper_in_lower"].as_bool().unwrap() && s["lower_in_upper"].as_bool().unwrap()))
        .map(|s| s["lower"].as_i64().unwrap())
        .collect();
    assert_eq!(strict, [0]);
}

#[test]
fn replay_single_cases() {
    for case in ["p1-identities", "ising-fusion"] {
        let v = json(&["verify-paper", "--case", case]);
        assert_eq!(v["result"]["cases"][0]["passed"], true);
        assert_eq!(v["result"]["cases"][0]["residual"], "0");
    }
}

#[test]
fn replay_full_suite() {
    let out = vir(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 14, "{text}");
}

#[test]
fn user_errors_exit_one_and_name_the_flag() {
    let cases: [(&[&str], &str); 6] = [
        (&["verdict", "--c", "1/x", "--h", "0", "--alpha", "0", "--beta", "1"], "--c"),
        (&["verdict", "--c", "1", "--h", "0", "--alpha", "1/0", "--beta", "1"], "--alpha"),
        (&["fusion", "--p", "4", "--q", "6", "--m1", "1", "--n1", "1", "--m2", "1", "--n2", "1"], "--q"),
        (&["fusion", "--p", "3", "--q", "4", "--m1", "1", "--n1", "1", "--m2", "3", "--n2", "1"], "--m2"),
        (&["reducible-pairs", "--p", "2", "--q", "5", "--m", "1", "--n", "5"], "--n"),
        (&["verify-paper", "--case", "nope"], "--case"),
    ];
    for (args, flag) in cases {
        let out = vir(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn missing_arguments_are_user_errors() {
    assert_eq!(vir(&["verdict", "--c", "1"]).status.code(), Some(1));
    assert_eq!(vir(&["--help"]).status.code(), Some(0));
}

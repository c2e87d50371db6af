use std::process::{Command, Output};

fn redei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redei")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_paper_passes() {
    let o = redei(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("[𝔭₁, 𝔭₂, 𝔭₃]") && l.contains("-1") && l.ends_with("PASS")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_paper_other_field_runs_field_checks_only() {
    let o = redei(&["--p", "13", "verify-paper", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().all(|n| n.contains("p = 13")), "{names:?}");
    assert!(names.iter().any(|n| n.starts_with("h⁺")));
}

#[test]
fn bad_field_is_usage_error() {
    assert_eq!(redei(&["--p", "7", "verify-paper"]).status.code(), Some(2));
    assert_eq!(redei(&["--p", "7", "unit"]).status.code(), Some(2));
    assert_eq!(redei(&["--p", "9", "classno"]).status.code(), Some(2));
}

#[test]
fn triple_json_schema() {
    let o = redei(&["triple", "33+8√5", "17", "(23+5√5)/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["symbol"], -1);
    assert_eq!(v["s"], "28");
    assert_eq!(v["u"], "57");
    for key in ["p1", "p2", "p3"] {
        assert!(v[key]["generator"]["a"].is_string());
    }
    for key in ["x", "y", "z", "primitive", "y_even", "xy_normalized"] {
        assert!(!v["solution"][key].is_null(), "{key}");
    }
}

#[test]
fn triple_with_swapped_pair_agrees() {
    let o = redei(&["triple", "17", "33+8√5", "(23+5√5)/2", "--format", "csv"]);
    assert!(stdout(&o).contains("symbol,-1"));
}

#[test]
fn inadmissible_triple_is_usage_error() {
    let o = redei(&["triple", "17", "17", "(23+5√5)/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeated ideal"));
}

#[test]
fn exhausted_height_bound_exits_3() {
    let o = redei(&["--height-bound", "1", "triple", "33+8√5", "17", "(23+5√5)/2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn conic_json_fields() {
    let o = redei(&["conic", "33+8√5", "17", "--count", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sols = v.as_array().unwrap();
    assert_eq!(sols.len(), 2);
    assert_eq!(sols[0]["x"]["a"], "-9");
    assert_eq!(sols[0]["x"]["b"], "-28");
    assert_eq!(sols[0]["primitive"], true);
}

#[test]
fn redei_examples() {
    for ex in ["29-13", "29-89"] {
        let o = redei(&["redei", "--example", ex]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    assert_eq!(redei(&["redei", "--example", "1-2"]).status.code(), Some(2));
    assert_eq!(redei(&["redei"]).status.code(), Some(2));
}

#[test]
fn magnus_commutator() {
    let o = redei(&["magnus", "x1 x2 x1^-1 x2^-1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.contains("depth,2"));
    assert!(text.contains("rho,[[1 0 1] [0 1 0] [0 0 1]]"));
    let o = redei(&["magnus", "x1 x2 x1^-1 x2^-1", "--index", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mu"], true);
    assert_eq!(v["fox"], v["coefficient"]);
}

#[test]
fn massey_on_shallow_word_is_rejected() {
    assert_eq!(redei(&["massey", "x1 x2"]).status.code(), Some(2));
    let o = redei(&["massey", "x1 x2 x1^-1 x2^-1 x3 x2 x1 x2^-1 x1^-1 x3^-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pairing"], 1);
}

#[test]
fn seeded_words_are_reproducible() {
    let a = stdout(&redei(&["massey", "--seed", "11"]));
    let b = stdout(&redei(&["massey", "--seed", "11"]));
    assert_eq!(a, b);
}

#[test]
fn search_is_idempotent_over_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("triples.csv");
    let out = out.to_str().unwrap();
    let first = redei(&["search", "--norm-bound", "300", "--out", out, "--format", "csv"]);
    assert_eq!(first.status.code(), Some(0));
    let table = std::fs::read_to_string(out).unwrap();
    let second = redei(&["search", "--norm-bound", "300", "--out", out, "--format", "csv", "--jobs", "1"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(out).unwrap(), table);
    assert!(table.starts_with("p,Np1,pi1,Np2,pi2,Np3,pi3,symbol\n"));
    assert!(dir.path().join("triples.solutions.jsonl").exists());
}

#[test]
fn search_includes_borromean_record() {
    let o = redei(&["search", "--norm-bound", "1000", "--format", "csv"]);
    assert!(stdout(&o).lines().any(|l| l == "5,289,17,769,33+8√5,101,11-2√5,-1"));
}

#[test]
fn search_rejects_field_with_nontrivial_narrow_class_group() {
    let o = redei(&["--p", "229", "search", "--norm-bound", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

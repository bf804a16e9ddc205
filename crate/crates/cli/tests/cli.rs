use assert_cmd::Command;
use serde_json::Value;

fn fpm(args: &[&str]) -> assert_cmd::assert::Assert {
    Command::cargo_bin("fpm").unwrap().args(args).assert()
}

fn stdout_json(a: &assert_cmd::assert::Assert) -> Value {
    serde_json::from_slice(&a.get_output().stdout).unwrap()
}

#[test]
fn passing_suites_exit_zero() {
    for args in [
        &["verify", "jacobi", "--m", "0", "--n", "3"][..],
        &[
            "verify",
            "lemma-compute",
            "--m",
            "2",
            "--n",
            "2",
            "--deg",
            "3",
        ],
        &["verify", "pi-hom", "--m", "1", "--n", "1", "--deg", "3"],
        &["verify", "--suite", "glmn-jacobi", "--m", "2", "--n", "1"],
    ] {
        let a = fpm(args).success();
        let r = stdout_json(&a);
        assert_eq!(r["passed"], true, "{args:?}");
        assert!(r.get("elapsed_ms").is_none());
    }
}

#[test]
fn bad_input_exits_two() {
    fpm(&["verify", "jacobi", "--m", "0", "--n", "0"]).code(2);
    fpm(&["verify", "no-such-suite"]).code(2);
    fpm(&["verify"]).code(2);
    fpm(&["verify", "lemma-compute", "--m", "5", "--n", "0"]).code(2);
    fpm(&["build", "--v1", "0,1", "--m", "2"]).code(2);
}

#[test]
fn mutated_pi_exits_one_with_a_counterexample() {
    let a = fpm(&["verify", "pi-hom", "--m", "1", "--n", "2", "--mutate-pi"]).code(1);
    let r = stdout_json(&a);
    assert_eq!(r["passed"], false);
    let c = &r["counterexample"];
    assert_eq!(c["degree"], 0);
    assert!(c["rerun"].as_str().unwrap().contains("--mutate-pi"));
}

#[test]
fn build_writes_a_table_and_a_certificate() {
    let a = fpm(&[
        "build", "--m", "1", "--n", "1", "--p-spec", "P", "--window", "4",
    ])
    .success();
    let out = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert!(out.starts_with("weight,dim\n"));
    assert!(out.lines().count() > 1);
    let cert: Value = serde_json::from_slice(&a.get_output().stderr).unwrap();
    assert_eq!(cert["bound"], 2);
    assert_eq!(cert["verdict"], "bounded");

    let a = fpm(&["table", "fpm-dims", "--format", "json", "--window", "3"]).success();
    let r = stdout_json(&a);
    assert!(r["table"].as_array().is_some_and(|t| !t.is_empty()));
    assert!(r["certificate"].is_object());
}

#[test]
fn cover_reports_its_summary() {
    let a = fpm(&["cover", "--m", "1", "--n", "1", "--window", "5"]).success();
    let r = stdout_json(&a);
    for key in ["minimal_r", "cover_dims", "b_spanning", "edge_flags"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["b_spanning"], true);

    let a = fpm(&["table", "cover-dims", "--window", "4"]).success();
    let out = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert!(out.starts_with("weight,v_dim,cover_dim,reliable\n"));
}

#[test]
fn runs_are_reproducible() {
    let args = [
        "verify",
        "aw-axioms",
        "--samples",
        "100",
        "--window",
        "3",
        "--seed",
        "4",
    ];
    let a = fpm(&args).success().get_output().stdout.clone();
    let b = fpm(&args).success().get_output().stdout.clone();
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("fpm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let a = fpm(&["verify", "glmn-jacobi", "--out", path.to_str().unwrap()]).success();
    assert!(a.get_output().stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["suite"], "glmn-jacobi");
    std::fs::remove_dir_all(&dir).unwrap();
}
